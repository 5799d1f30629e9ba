#ifndef NORMNUM_SIERPINSKI_HPP
#define NORMNUM_SIERPINSKI_HPP

// The quantitative Sierpinski cover machinery.
//
// The cover of the non-normal numbers is a fourfold union over bases b,
// fluctuation levels m, expansion lengths n and digits d of interval
// families U_{b,m,n,d}; each family collects, for every length-n digit
// string whose digit-d count deviates from n/b by at least n/m, one
// translated copy of (b^-n, 2 b^-n). The true cutoff lengths make full
// enumeration astronomically infeasible, so the assembled covers separate
// "constants as specified" from "sets as built": whatever a budget excludes
// is charged to a certified rational tail bound, and downstream consumers
// only ever see (set, tail) pairs.

#include "normnum/errors.hpp"
#include "normnum/interval.hpp"
#include "normnum/polynomial.hpp"
#include "normnum/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normnum {

struct CoverAtomParams {
    long base;    // b >= 2
    long fluct;   // m >= 1
    long length;  // n >= 1
    long digit;   // 0 <= d < b
};

// Cutoff length: the n at which the family (b, m) may start so that the
// whole cover stays below measure r. Exact: floor(24 m^6 b^2 / r) + 2.
inline Int length_cutoff(long m, long b, const Rat& r) {
    if (m < 1 || b < 2) throw std::invalid_argument("length_cutoff needs m >= 1, b >= 2");
    if (r <= 0) throw std::invalid_argument("length_cutoff needs r > 0");
    Rat q = Rat(24) * int_pow(Int(m), 6) * Int(b) * Int(b) / r;
    return floor_rat(q) + 2;
}

// Certified bound on mu(U_{b,m,n,d}): 12 m^4 / (b n^2), before clipping.
inline Rat atom_bound_raw(long b, long m, long n) {
    return rat(12 * int_pow(Int(m), 4), Int(b) * Int(n) * Int(n));
}

inline Rat atom_bound(long b, long m, long n) {
    Rat v = atom_bound_raw(b, m, n);
    return v < 1 ? v : Rat(1);
}

// Tail of one (b, m) family over n >= N (digits included): 12 m^4 / (N-1).
inline Rat tail_over_n_raw(long m, const Int& n_from) {
    if (n_from < 2) throw std::invalid_argument("tail_over_n needs N >= 2");
    return rat(12 * int_pow(Int(m), 4), n_from - 1);
}

inline Rat tail_over_n(long m, const Int& n_from) {
    Rat v = tail_over_n_raw(m, n_from);
    return v < 1 ? v : Rat(1);
}

// Tail of one base over fluctuation levels m >= M:
// (r / 2b^2) * min(823/500, 1/(M-1)); 823/500 is a rational over-bound of
// pi^2/6 so the certificate stays rational.
inline Rat tail_over_m_raw(long b, long m_from, const Rat& r) {
    Rat series = rat(823, 500);
    if (m_from >= 2) {
        Rat alt = rat(1, m_from - 1);
        if (alt < series) series = alt;
    }
    return r / (2 * Int(b) * Int(b)) * series;
}

inline Rat tail_over_m(long b, long m_from, const Rat& r) {
    Rat v = tail_over_m_raw(b, m_from, r);
    return v < 1 ? v : Rat(1);
}

// Tail over bases b >= B: r / (B-1).
inline Rat tail_over_b_raw(long b_from, const Rat& r) {
    if (b_from < 2) throw std::invalid_argument("tail_over_b needs B >= 2");
    return r / Int(b_from - 1);
}

inline Rat tail_over_b(long b_from, const Rat& r) {
    Rat v = tail_over_b_raw(b_from, r);
    return v < 1 ? v : Rat(1);
}

// The published truncation triple (b_k, m_k, n_k): computable sizes at which
// the truncated cover is within 2^-k of the full one. Reported, never
// enumerated (n_k = 12 * 2^(7k+12)).
struct TruncationTriple {
    Int b_max;
    Int m_max;
    Int n_max;
};

inline TruncationTriple truncation_constants(long k) {
    if (k < 1) throw std::invalid_argument("truncation_constants needs k >= 1");
    return TruncationTriple{int_pow(2, k + 1), int_pow(2, k + 2) + 1,
                            12 * int_pow(2, 7 * static_cast<unsigned long>(k) + 12)};
}

// Exact construction of U_{b,m,n,d}: for each qualifying digit string with
// value q (read as a base-b integer), the open interval
// ((q+1) b^-n, (q+2) b^-n). Strings qualify when m|C_d b - n| >= n b, the
// integer form of |C_d/n - 1/b| >= 1/m. Throws BudgetExceeded carrying
// atom_bound when b^n exceeds the ceiling.
inline IntervalUnion build_atom(const CoverAtomParams& p, const Int& ceiling = int_pow(2, 24)) {
    if (p.base < 2 || p.fluct < 1 || p.length < 1 || p.digit < 0 || p.digit >= p.base)
        throw std::invalid_argument("bad cover atom parameters");
    Int total = int_pow(Int(p.base), static_cast<unsigned long>(p.length));
    if (total > ceiling)
        throw BudgetExceeded("atom enumeration over " + total.get_str() + " strings exceeds ceiling",
                             atom_bound(p.base, p.fluct, p.length));
    unsigned long count = total.get_ui();
    long n = p.length, b = p.base, m = p.fluct, d = p.digit;
    Rat scale = rat(Int(1), total);
    std::vector<Interval> cells;
    for (unsigned long q = 0; q < count; ++q) {
        unsigned long v = q;
        long cd = 0;
        for (long j = 0; j < n; ++j) {
            if (static_cast<long>(v % b) == d) ++cd;
            v /= b;
        }
        long dev = cd * b - n;
        if (static_cast<long long>(m) * (dev < 0 ? -dev : dev) >= static_cast<long long>(n) * b) {
            cells.emplace_back(Rat(static_cast<unsigned long>(q + 1)) * scale,
                               Rat(static_cast<unsigned long>(q + 2)) * scale);
        }
    }
    return IntervalUnion::normalize(std::move(cells));
}

// Enumeration budget for assembled covers. n_length_max Returns the largest
// expansion length to build for a family (b, m); anything above it (or above
// the b^n ceiling) is charged to the tail.
struct TruncationBudget {
    long b_max = 4;
    long m_max = 4;
    std::function<long(long, long)> n_length_max = [](long, long) { return 0; };
    Int atom_ceiling = int_pow(2, 24);
};

struct CoverChunk {
    IntPolynomial poly;
    IntervalUnion set;    // built subset of the translated inner cover
    Rat radius;           // the r-argument fed to the inner cover
    Rat tail_bound;       // certified measure bound on everything omitted
};

namespace detail {

// Largest n with b^n <= ceiling.
inline long length_ceiling(long b, const Int& ceiling) {
    long n = 0;
    Int pow = b;
    while (pow <= ceiling) {
        ++n;
        pow *= b;
    }
    return n;
}

// Builds the budgeted part of one inner cover U(rho) and returns it together
// with the certified bound on what was left out. The omitted mass is the
// minimum of two certificates: the summed per-family tails, and the whole-
// cover bound rho (the tail-over-bases bound at B = 2).
inline std::pair<IntervalUnion, Rat> build_inner_cover(const Rat& rho,
                                                       const TruncationBudget& budget) {
    IntervalUnion built;
    Rat tail_parts = tail_over_b_raw(budget.b_max + 1, rho);
    for (long b = 2; b <= budget.b_max; ++b) {
        tail_parts += tail_over_m_raw(b, budget.m_max + 1, rho);
        for (long m = 1; m <= budget.m_max; ++m) {
            Int n_from = length_cutoff(m, b, rho);
            long n_cap = std::min<long>(budget.n_length_max(b, m),
                                        length_ceiling(b, budget.atom_ceiling));
            if (n_from <= n_cap) {
                for (long n = static_cast<long>(n_from.get_si()); n <= n_cap; ++n)
                    for (long d = 0; d < b; ++d)
                        built = IntervalUnion::unite(
                            built, build_atom({b, m, n, d}, budget.atom_ceiling));
                tail_parts += tail_over_n_raw(m, Int(n_cap) + 1);
            } else {
                tail_parts += tail_over_n_raw(m, n_from);
            }
        }
    }
    Rat tail = tail_parts < rho ? tail_parts : rho;
    return {std::move(built), std::move(tail)};
}

}  // namespace detail

// Assembles the truncated polynomial cover for target measure r: for each of
// the first k_max polynomials, an inner cover at radius
// rho_k = (2^-k r / K_d)^d translated over the reachable z range
// |z| <= L_p + 1. The exponent d inverts the stretch bound
// K_d * delta^(1/d), so stretch_bound(p_k, rho_k) <= 2^-k r and the chunk
// certificates sum below r. Radius arithmetic is exact, so no rounding
// direction is needed; the certificate is re-verified before returning.
inline std::vector<CoverChunk> assemble_truncated_cover(const Rat& r, size_t k_max,
                                                        const TruncationBudget& budget) {
    if (r <= 0 || r >= 1) throw std::invalid_argument("cover target must satisfy 0 < r < 1");
    std::vector<CoverChunk> chunks;
    auto polys = enumerate_prefix(k_max);
    Rat certified_total = 0;
    for (size_t k = 1; k <= k_max; ++k) {
        const IntPolynomial& p = polys[k - 1];
        unsigned d = p.degree();
        Rat share = pow2(-static_cast<long>(k)) * r;
        Rat rho = rat_pow(share / Rat(stretch_constant(d)), d);
        long z_reach = static_cast<long>(p.lipschitz().get_si()) + 1;
        IntervalUnion set;
        Rat tail = 0;
        for (long z = -z_reach; z <= z_reach; ++z) {
            Rat rho_z = rho * pow2(-(std::labs(z) + 2));
            auto [inner, inner_tail] = detail::build_inner_cover(rho_z, budget);
            set = IntervalUnion::unite(set, inner.pad_translate(Rat(z), Rat(0)));
            tail += inner_tail;
        }
        Rat certified = stretch_bound(p, set.measure() + tail);
        certified_total += certified;
        chunks.push_back(CoverChunk{p, std::move(set), std::move(rho), std::move(tail)});
    }
    if (certified_total >= r)
        throw InvariantViolation("assembled cover certificate " + to_string(certified_total) +
                                 " not below target " + to_string(r));
    return chunks;
}

// Exact certificate recomputation for a chunk list: sum of
// stretch_bound(p_k, mu(set_k) + tail_k).
inline Rat cover_certificate(const std::vector<CoverChunk>& chunks) {
    Rat total = 0;
    for (const auto& c : chunks) total += stretch_bound(c.poly, c.set.measure() + c.tail_bound);
    return total;
}

// ---------------------------------------------------------------------------
// Truncated minimum enclosure.
//
// For a finite chunk list, U = union of p_i^{-1}(S_i) over [0,1] is open and
// xi = the first point of [0,1] not covered by U (cell endpoints of the
// dyadic scan, a finite null set, do not block coverage). The enclosure
// certifies lo by covering (0, lo) with cells each proven inside one part of
// one chunk preimage, and hi by a rational witness x with p_i(x) outside S_i
// for every chunk.

struct MinEnclosure {
    enum class Status { Enclosed, Unknown };
    Status status;
    Rat lo;
    Rat hi;
};

namespace detail {

using ChunkList = std::vector<std::pair<IntPolynomial, IntervalUnion>>;

inline bool cell_inside_part(const IntPolynomial& p, const Rat& s, const Rat& t,
                             const Interval& part) {
    Interval enc = eval_local(p, s, t);
    if (part.lo < enc.lo && enc.hi < part.hi) return true;
    return open_image_inside(p, s, t, part);
}

inline bool cell_covered(const ChunkList& chunks, const Rat& s, const Rat& t, int depth,
                         long& node_budget) {
    if (--node_budget < 0) return false;
    for (const auto& [p, u] : chunks)
        for (const auto& part : u.parts())
            if (cell_inside_part(p, s, t, part)) return true;
    if (depth <= 0) return false;
    Rat mid = (s + t) / 2;
    return cell_covered(chunks, s, mid, depth - 1, node_budget) &&
           cell_covered(chunks, mid, t, depth - 1, node_budget);
}

inline bool point_in_union(const ChunkList& chunks, const Rat& x) {
    for (const auto& [p, u] : chunks)
        if (u.contains(p.eval(x))) return true;
    return false;
}

}  // namespace detail

// Encloses xi to width <= 2^-precision; budget caps the number of coverage
// nodes explored. Unknown is a value, not a failure.
inline MinEnclosure min_outside_enclosure(
    const std::vector<std::pair<IntPolynomial, IntervalUnion>>& chunks, long precision,
    long node_budget = 200000) {
    const long step_depth = precision + 2;
    Rat frontier = 0;
    Rat min_step = pow2(-step_depth);
    while (frontier < 1) {
        bool advanced = false;
        for (long j = 1; j <= step_depth; ++j) {
            Rat step = pow2(-j);
            if (frontier + step > 1) continue;
            long depth_left = step_depth - j;
            if (detail::cell_covered(chunks, frontier, frontier + step, static_cast<int>(depth_left),
                                     node_budget)) {
                frontier += step;
                advanced = true;
                break;
            }
            if (node_budget < 0) return MinEnclosure{MinEnclosure::Status::Unknown, Rat(0), Rat(1)};
        }
        if (!advanced) break;
    }
    // Frontier pinned (or reached 1): find a rational witness just past it.
    const Rat candidates[] = {frontier, Rat(frontier + min_step / 2), Rat(frontier + min_step)};
    for (const Rat& candidate : candidates) {
        if (candidate > 1) break;
        if (!detail::point_in_union(chunks, candidate))
            return MinEnclosure{MinEnclosure::Status::Enclosed, frontier, candidate};
    }
    return MinEnclosure{MinEnclosure::Status::Unknown, frontier, Rat(1)};
}

}  // namespace normnum

#endif
