#ifndef NORMNUM_DIGITS_HPP
#define NORMNUM_DIGITS_HPP

// The measurable-query layer over covers and the factorial-base decision
// tree that emits the digits of a point outside the cover in every integer
// base simultaneously.
//
// A cover answers (interval J, precision n) queries with
// |answer - mu(U ∩ J)| <= 2^-n. The decision tree keeps a cell
// [d/(N+1)!, (d+1)/(N+1)!) together with a slack eps_N certifying
// mu(U ∩ cell) <= 1/(N+1)! - eps_N; each step splits the cell into N+2
// children, queries each at precision eps_N/(4(N+2)) and descends into the
// child with the smallest approximant (ties toward the smallest index),
// passing slack eps_N/(2(N+2)) down. Because every base-b digit of width
// b^-n with b^n | (N+1)! is a coarsening of the cell, digits in all bases
// are emitted simultaneously and never revised.

#include "normnum/errors.hpp"
#include "normnum/interval.hpp"
#include "normnum/polynomial.hpp"
#include "normnum/rational.hpp"
#include "normnum/sierpinski.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace normnum {

// Query capability: approximate mu(U ∩ J) within 2^-n. Implementations are
// immutable after construction and safe to share across threads.
class MeasurableCover {
  public:
    virtual ~MeasurableCover() = default;

    // |result - mu(U ∩ J)| <= 2^-n, clamped into [0, |J|].
    virtual Rat query(const Interval& j, long n) const = 0;

    // Certified bound on mu(U ∩ [0,1]).
    virtual Rat measure_bound() const = 0;

    // Certified bound on mass missing from the queryable set (nonzero for
    // truncated covers); folded into the caller's slack accounting.
    virtual Rat tail_residual() const { return Rat(0); }
};

inline Rat wcm_query(const MeasurableCover& cover, const Interval& j, long n) {
    return cover.query(j, n);
}

// Synthetic cover: an explicit interval union, answered exactly.
class ExactUnionCover final : public MeasurableCover {
  public:
    explicit ExactUnionCover(IntervalUnion u) : set_(std::move(u)) {}

    Rat query(const Interval& j, long) const override { return set_.measure_within(j); }

    Rat measure_bound() const override { return set_.measure_within(Interval(Rat(-1), Rat(2))); }

    const IntervalUnion& set() const { return set_; }

  private:
    IntervalUnion set_;
};

// Truncated polynomial cover: chunks (p_k, S_k, tail_k) describing
// U = union of p_k^{-1}(S_k). Queries approximate the built union through
// dyadic preimages: the per-part approximation budget splits 2^-(n+2)
// evenly, the per-part unions are merged and measured exactly within J.
// The chunk tail bounds are not part of the queried set; they surface
// through tail_residual() (amplified by the stretch bound, since omitted
// target-space mass inflates preimages).
class ChunkedPolyCover final : public MeasurableCover {
  public:
    explicit ChunkedPolyCover(std::vector<CoverChunk> chunks) : chunks_(std::move(chunks)) {
        total_parts_ = 0;
        for (const auto& c : chunks_) total_parts_ += c.set.size();
        tail_ = 0;
        for (const auto& c : chunks_)
            if (c.tail_bound > 0) tail_ += stretch_bound(c.poly, c.tail_bound);
    }

    Rat query(const Interval& j, long n) const override {
        const IntervalUnion& u = approximation(n);
        Rat raw = u.measure_within(j);
        // The dyadic union may overshoot mu(U ∩ J) by the approximation
        // error; clamp into [0, |J|].
        Rat width = j.hi - j.lo;
        if (raw > width) raw = width;
        return raw;
    }

    // Two certified routes: the stretch-bound certificate (sharp for honest
    // truncated covers, clips to 1 for wide synthetic chunks) and the dyadic
    // approximation measure plus its error. Take the smaller.
    Rat measure_bound() const override {
        Rat cert = cover_certificate(chunks_);
        Rat approx = approximation(24).measure() + pow2(-24);
        return approx < cert ? approx : cert;
    }

    Rat tail_residual() const override { return tail_; }

    const std::vector<CoverChunk>& chunks() const { return chunks_; }

    // Dyadic approximation of the built union with symmetric difference
    // <= 2^-(n+1); memoized per precision.
    const IntervalUnion& approximation(long n) const {
        auto it = approx_.find(n);
        if (it != approx_.end()) return it->second;
        long per_part = n + 2;
        if (total_parts_ > 0) per_part += ceil_log2(Int(static_cast<unsigned long>(total_parts_)));
        IntervalUnion merged;
        for (const auto& c : chunks_)
            for (const auto& part : c.set.parts())
                merged = IntervalUnion::unite(merged, preimage_dyadic(c.poly, part, per_part));
        return approx_.emplace(n, std::move(merged)).first->second;
    }

  private:
    std::vector<CoverChunk> chunks_;
    size_t total_parts_;
    Rat tail_;
    mutable std::map<long, IntervalUnion> approx_;
};

// ---------------------------------------------------------------------------
// The decision tree.

struct DigitState {
    long step;        // N
    Int d;            // cell index in base (N+1)!
    Rat slack;        // eps_N
    Rat certificate;  // certified bound on mu(U ∩ cell), <= 1/(N+1)! - eps_N
};

inline Int factorial(long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

// Smallest precision exponent q with 2^-q <= target.
inline long precision_for(const Rat& target) {
    if (target <= 0) throw std::invalid_argument("precision target must be positive");
    long q = 0;
    Rat p(1);
    while (p > target) {
        p /= 2;
        ++q;
    }
    return q;
}

// One refinement step: split the current cell into N+2 equal children, query
// each at precision slack/(4(N+2)), keep the minimal approximant (ties to
// the smallest index). The resulting certificate telescopes:
// new bound <= 1/(N+2)! - eps_N/(2(N+2)).
inline DigitState algo_step(const DigitState& state, const MeasurableCover& cover) {
    long children = state.step + 2;
    Int fact_next = factorial(state.step + 2);  // (N+2)!
    Rat child_width = rat(Int(1), fact_next);
    Rat tol = state.slack / (4 * Int(children));
    long prec = precision_for(tol);
    Rat query_err = pow2(-prec);

    Int base_index = Int(children) * state.d;
    Rat best;
    long best_k = -1;
    for (long k = 0; k < children; ++k) {
        Rat lo = Rat(base_index + k) * child_width;
        Rat l = cover.query(Interval(lo, lo + child_width), prec);
        if (best_k < 0 || l < best) {
            best = l;
            best_k = k;
        }
    }
    DigitState next;
    next.step = state.step + 1;
    next.d = base_index + best_k;
    next.slack = state.slack / (2 * Int(children));
    next.certificate = best + query_err;
    Rat required = child_width - next.slack;
    if (next.certificate > required)
        throw InvariantViolation("digit step lost its certificate: bound " +
                                 to_string(next.certificate) + " above " + to_string(required));
    return next;
}

// First n base-b digits of the emitted point; requires b^n | (N+1)! so the
// digits are final. Otherwise signals the smallest iteration count N' that
// makes b^n divide (N'+1)!.
inline std::string extract_digits(const DigitState& state, long base, long n_digits) {
    if (base < 2 || n_digits < 1) throw std::invalid_argument("bad digit extraction request");
    Int bn = int_pow(Int(base), static_cast<unsigned long>(n_digits));
    Int fact = factorial(state.step + 1);
    if (fact % bn != 0) {
        long required = state.step + 1;
        while (factorial(required + 1) % bn != 0) ++required;
        throw InsufficientIterations("base " + std::to_string(base) + "^" +
                                         std::to_string(n_digits) + " does not divide (N+1)! at N = " +
                                         std::to_string(state.step),
                                     required);
    }
    Int w = (bn * state.d) / fact;
    std::string digits(static_cast<size_t>(n_digits), '0');
    for (long i = n_digits - 1; i >= 0; --i) {
        Int rem = w % base;
        digits[static_cast<size_t>(i)] = static_cast<char>('0' + rem.get_ui());
        w /= base;
    }
    return digits;
}

// Largest n with base^n | (N+1)!.
inline long max_final_digits(long step, long base) {
    Int fact = factorial(step + 1);
    long n = 0;
    Int bn(base);
    while (fact % bn == 0) {
        ++n;
        bn *= base;
    }
    return n;
}

struct RunReport {
    DigitState state;
    std::vector<DigitState> trail;           // state after each step
    std::map<long, std::string> digits;      // base -> final digit string
    Rat initial_bound;                       // certified mu(U ∩ [0,1]) bound
    Rat tail_residual;                       // unqueryable mass (truncated covers)
    bool residual_within_slack;              // final slack still exceeds the residual
};

// Runs the decision tree for `iterations` steps starting from the trivial
// cell [0,1). Requires a certificate mu(U ∩ [0,1]) <= 1 - epsilon, checked
// against the cover's own bound. For truncated covers the queryable set
// misses at most tail_residual() of the true cover; the report states
// whether the final slack still dominates that residual.
inline RunReport run_decision_tree(const MeasurableCover& cover, long iterations,
                                   const Rat& epsilon, std::vector<long> bases = {2, 3, 6}) {
    if (iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    Rat bound = cover.measure_bound();
    if (bound > 1 - epsilon)
        throw InvariantViolation("cover measure bound " + to_string(bound) +
                                 " violates mu <= 1 - epsilon for epsilon = " + to_string(epsilon));
    RunReport report;
    report.initial_bound = bound;
    report.tail_residual = cover.tail_residual();
    DigitState state{0, Int(0), epsilon, bound};
    report.trail.push_back(state);
    for (long i = 0; i < iterations; ++i) {
        state = algo_step(state, cover);
        report.trail.push_back(state);
    }
    report.state = state;
    for (long b : bases) {
        long n = max_final_digits(state.step, b);
        if (n >= 1) report.digits[b] = extract_digits(state, b, n);
    }
    report.residual_within_slack = state.slack > report.tail_residual;
    return report;
}

}  // namespace normnum

#endif
