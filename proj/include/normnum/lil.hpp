#ifndef NORMNUM_LIL_HPP
#define NORMNUM_LIL_HPP

// The law-of-the-iterated-logarithm layer: exact extreme discrepancy, the
// limsup constants per base, exact block variances for b-adic indicator
// pairs, non-asymptotic random-walk bounds, toy constructions of the
// deviation block sets, the dyadic discretization constants, and the radius
// bookkeeping that assembles a sub-r cover from all of it.
//
// Rounding discipline: thresholds round up, tail bounds round up, cover
// radii are exact rationals. Irrational comparisons (deviation vs. a
// sqrt(log log) threshold) are decided through enclosures refined until the
// comparison is strict.

#include "normnum/enclosure.hpp"
#include "normnum/errors.hpp"
#include "normnum/interval.hpp"
#include "normnum/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normnum {

// ---------------------------------------------------------------------------
// Discrepancy.

// Fractional part in [0, 1).
inline Rat fractional(const Rat& x) { return x - Rat(floor_rat(x)); }

// First n points of the base-b digit-shift orbit of x: {b^(j-1) x}, j = 1..n.
inline std::vector<Rat> orbit_points(const Rat& x, long base, size_t n) {
    if (base < 2) throw std::invalid_argument("orbit base must be >= 2");
    std::vector<Rat> pts;
    pts.reserve(n);
    const Int& q = x.get_den();
    Int num = x.get_num();
    mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    for (size_t j = 0; j < n; ++j) {
        pts.push_back(rat(num, q));
        num *= base;
        mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    }
    return pts;
}

// Exact extreme discrepancy sup_{[alpha,beta)} |count/N - (beta-alpha)| of a
// point multiset in [0,1). Closed form from the sorted points:
//   D_N = max_i (i/N - x_(i)) + max_i (x_(i) - (i-1)/N),
// which equals the supremum including its one-sided limits.
inline Rat extreme_discrepancy(std::vector<Rat> pts) {
    if (pts.empty()) throw std::invalid_argument("discrepancy of empty point set");
    std::sort(pts.begin(), pts.end());
    const Rat n(static_cast<unsigned long>(pts.size()));
    Rat up = rat(1, 1) / n - pts[0];  // i = 1 term of the first max
    Rat down = pts[0];
    for (size_t i = 1; i < pts.size(); ++i) {
        Rat a = Rat(static_cast<unsigned long>(i + 1)) / n - pts[i];
        Rat b = pts[i] - Rat(static_cast<unsigned long>(i)) / n;
        if (a > up) up = a;
        if (b > down) down = b;
    }
    return up + down;
}

// b-adic pair a = qa/b^L < a' = qb/b^L with 0 <= qa < qb <= b^L.
struct BadicPair {
    long base;
    long level;
    Int qa;
    Int qb;

    BadicPair(long base_, long level_, Int qa_, Int qb_)
        : base(base_), level(level_), qa(std::move(qa_)), qb(std::move(qb_)) {
        if (base < 2 || level < 1) throw std::invalid_argument("bad b-adic pair indices");
        Int cells = int_pow(Int(base), static_cast<unsigned long>(level));
        if (!(0 <= qa && qa < qb && qb <= cells))
            throw std::invalid_argument("b-adic pair needs 0 <= qa < qb <= b^L");
    }

    Rat a() const { return rat(qa, int_pow(Int(base), static_cast<unsigned long>(level))); }
    Rat a_prime() const { return rat(qb, int_pow(Int(base), static_cast<unsigned long>(level))); }
    Rat width() const { return a_prime() - a(); }
};

// |(1/N) sum 1_{[a,a')}(pts_j) - (a'-a)| over the first n points, exact.
inline Rat restricted_discrepancy(const std::vector<Rat>& pts, size_t n, const BadicPair& pair) {
    if (n == 0 || n > pts.size()) throw std::invalid_argument("bad prefix length");
    Rat a = pair.a(), b = pair.a_prime();
    unsigned long count = 0;
    for (size_t j = 0; j < n; ++j)
        if (a <= pts[j] && pts[j] < b) ++count;
    return abs(Rat(count) / Rat(static_cast<unsigned long>(n)) - (b - a));
}

// ---------------------------------------------------------------------------
// The limsup constant per base.

// L_b: sqrt(84/81) for b = 2, sqrt((b+1)/(2(b-1))) for odd b,
// sqrt(b(b+1)(b-2)/(2(b-1)^3)) for even b >= 4. Enclosure width <= 2^-30;
// exact when the radicand is a perfect rational square (e.g. L_3 = 1).
inline Enclosure lil_constant(long b) {
    if (b < 2) throw std::invalid_argument("lil_constant needs base >= 2");
    Rat radicand;
    if (b == 2) {
        radicand = rat(84, 81);
    } else if (b % 2 == 1) {
        radicand = rat(b + 1, 2 * (b - 1));
    } else {
        radicand = rat(Int(b) * Int(b + 1) * Int(b - 2), 2 * int_pow(Int(b - 1), 3));
    }
    return sqrt_enclosure(radicand, 34);
}

// ---------------------------------------------------------------------------
// Exact block variances.
//
// psi = 1_{[a,a')} - (a'-a) is constant on the b^L grid; the correlation
// integral against its b^j dilate is constant on the b^(L+j) grid, so all
// variances here are finite exact sums.

namespace detail {

inline std::vector<Rat> psi_values(const BadicPair& pair) {
    Int cells = int_pow(Int(pair.base), static_cast<unsigned long>(pair.level));
    Rat width = pair.width();
    std::vector<Rat> psi(cells.get_ui());
    for (unsigned long i = 0; i < psi.size(); ++i)
        psi[i] = (pair.qa <= Int(i) && Int(i) < pair.qb) ? Rat(1 - width) : Rat(-width);
    return psi;
}

}  // namespace detail

// Correlation integral of psi with its b^j dilate, j >= 0 (j = 0 gives the
// plain second moment).
inline Rat psi_correlation(const BadicPair& pair, long j) {
    if (j < 0) throw std::invalid_argument("correlation shift must be >= 0");
    auto psi = detail::psi_values(pair);
    unsigned long l_cells = psi.size();
    Int grid = int_pow(Int(pair.base), static_cast<unsigned long>(pair.level + j));
    Int shift = int_pow(Int(pair.base), static_cast<unsigned long>(j));
    Rat sum = 0;
    unsigned long g = grid.get_ui();
    unsigned long s = shift.get_ui();
    for (unsigned long t = 0; t < g; ++t) sum += psi[(t / s) % l_cells] * psi[t % l_cells];
    return sum / Rat(grid);
}

// sigma_M^2 = (1/(ML)) E[(Y_1^M - ML (a'-a))^2] for the length-LM digit
// block, and its M -> infinity limit
//   sigma^2 = int psi^2 + 2 sum_{j=1}^{L-1} int psi(x) psi(b^j x) dx.
// Finite M comes from counting correlated index pairs in the block:
//   sigma_M^2 = int psi^2 + sum_{j=1}^{L-1} (2(LM - j)/(LM)) corr_j.
inline Rat sigma_sq_exact(const BadicPair& pair, std::optional<long> m_blocks) {
    if (m_blocks && *m_blocks < 1) throw std::invalid_argument("block multiplier must be >= 1");
    Rat total = psi_correlation(pair, 0);
    for (long j = 1; j < pair.level; ++j) {
        Rat corr = psi_correlation(pair, j);
        if (m_blocks) {
            Int lm = Int(pair.level) * Int(*m_blocks);
            total += rat(2 * (lm - j), lm) * corr;
        } else {
            total += 2 * corr;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Non-asymptotic random-walk bounds.

struct RwParams {
    Rat delta;     // 0 < delta <= 1
    Rat sigma_sq;  // variance of one increment, > 0
    Rat bound_k;   // almost-sure bound on |increment|
    Int n0;        // starting index
};

struct RwThresholds {
    Enclosure q;   // exp(-2 delta^2 sigma^2 / K^4)
    Rat a_delta;   // upper bound on A_delta
    Rat a_prime;   // upper bound on A'_delta
};

namespace detail {

// Upper bound on A_delta = 1/((delta log q)^2 (1-q)^delta) with
// q = exp(-2 delta^2 sigma^2 / K^4). log q = -exponent exactly, so only
// (1-q)^delta needs an enclosure, rounded down to push A_delta up.
inline Rat a_delta_upper(const Rat& delta, const Rat& sigma_sq, const Rat& bound_k,
                         Enclosure* q_out = nullptr) {
    if (delta <= 0 || sigma_sq <= 0 || bound_k <= 0)
        throw std::invalid_argument("walk bounds need positive delta, sigma^2, K");
    Rat t = 2 * delta * delta * sigma_sq / rat_pow(bound_k, 4);
    unsigned long bits = 64;
    Enclosure q = exp_enclosure(-t, bits);
    while (q.hi >= 1) {
        bits *= 2;
        if (bits > 8192) throw InvariantViolation("exp enclosure failed to separate from 1");
        q = exp_enclosure(-t, bits);
    }
    if (q_out) *q_out = q;
    Rat base = 1 - q.hi;  // lower bound on 1 - q
    Rat pow_lower = rat_pow_lower(base, delta);
    if (pow_lower <= 0) {
        // base < 1, so powers stay positive; only the guarded root can floor
        // to zero. Retry with more guard bits.
        pow_lower = rat_pow_lower(base, delta, 128);
        if (pow_lower <= 0) throw InvariantViolation("degenerate (1-q)^delta lower bound");
    }
    return 1 / (delta * t * delta * t * pow_lower);
}

}  // namespace detail

// Thresholds above which the two walk bounds are valid:
// A_delta for the upper bound, A'_delta = max(A_(1/2), (2/delta)^(2/delta))
// for the lower. Both rounded up.
inline RwThresholds rw_thresholds(const RwParams& p) {
    Enclosure q = Enclosure::exact(Rat(0));
    Rat a_delta = detail::a_delta_upper(p.delta, p.sigma_sq, p.bound_k, &q);
    Rat a_half = detail::a_delta_upper(rat(1, 2), p.sigma_sq, p.bound_k);
    Rat spike = rat_pow_upper(2 / p.delta, 2 / p.delta);
    return RwThresholds{q, a_delta, std::max(a_half, spike)};
}

struct RwTails {
    Rat up_raw;   // 8 / (delta N0^delta), rounded up
    Rat up;       // clipped at 1
    Rat low_raw;  // 80 / sqrt(N0), rounded up
    Rat low;      // clipped at 1
};

inline RwTails rw_tails(const RwParams& p) {
    if (p.n0 < 1) throw std::invalid_argument("tail bounds need N0 >= 1");
    unsigned long u = p.delta.get_num().get_ui();
    unsigned long v = p.delta.get_den().get_ui();
    // N0^delta >= floor((N0^u)^(1/v)) >= 1.
    Int pow_floor = root_floor(int_pow(p.n0, u), v);
    Rat up_raw = rat(Int(8) * Int(v), Int(u) * pow_floor);
    Rat low_raw = rat(Int(80), root_floor(p.n0, 2));
    return RwTails{up_raw, std::min(up_raw, Rat(1)), low_raw, std::min(low_raw, Rat(1))};
}

// ---------------------------------------------------------------------------
// Deviation block sets.
//
// For the b-adic pair (a, a') of level L, X_j is the indicator that digits
// j..j+L-1 of x fall in [qa, qb). The index line is split into alternating
// runs J_1, ^J_1, J_2, ... of LM and L consecutive indices; Y_k sums X over
// J_k and Z_k over ^J_k, giving i.i.d. block walks.

namespace detail {

// Decides (S - mean)^2 {>, <} coef_sq * phi_n^2 through enclosure refinement.
inline bool deviation_exceeds(const Rat& dev_sq, const Rat& coef_sq, const Int& n_phi) {
    if (n_phi <= 2) return dev_sq > 0;  // phi = 0 below N = 3
    for (unsigned long bits = 48; bits <= 1024; bits *= 2) {
        Enclosure rhs = coef_sq * phi_sq_enclosure(n_phi, bits);
        if (dev_sq > rhs.hi) return true;
        if (dev_sq <= rhs.lo) return false;
    }
    throw InvariantViolation("deviation threshold comparison undecidable");
}

inline bool deviation_below(const Rat& dev_sq, const Rat& coef_sq, const Int& n_phi) {
    if (coef_sq == 0) return false;
    if (n_phi <= 2) return false;
    for (unsigned long bits = 48; bits <= 1024; bits *= 2) {
        Enclosure rhs = coef_sq * phi_sq_enclosure(n_phi, bits);
        if (dev_sq < rhs.lo) return true;
        if (dev_sq >= rhs.hi) return false;
    }
    throw InvariantViolation("deviation threshold comparison undecidable");
}

struct BlockLayout {
    long base, level, m_mult;

    // X_i for 1-based index i given the digit string, digits[0] = first digit.
    long x_at(const std::vector<long>& digits, long i, const Int& qa, const Int& qb) const {
        Int w = 0;
        for (long t = 0; t < level; ++t) w = w * base + digits[static_cast<size_t>(i - 1 + t)];
        return (qa <= w && w < qb) ? 1 : 0;
    }

    // Sum of Y_1..Y_count (block sums over the J_k runs).
    long y_sum(const std::vector<long>& digits, long count, const Int& qa, const Int& qb) const {
        long s = 0;
        long stride = level * m_mult + level;
        for (long k = 0; k < count; ++k) {
            long start = k * stride + 1;
            for (long i = start; i < start + level * m_mult; ++i) s += x_at(digits, i, qa, qb);
        }
        return s;
    }

    // Sum of Z_1..Z_count (block sums over the ^J_k runs).
    long z_sum(const std::vector<long>& digits, long count, const Int& qa, const Int& qb) const {
        long s = 0;
        long stride = level * m_mult + level;
        for (long k = 0; k < count; ++k) {
            long start = k * stride + level * m_mult + 1;
            for (long i = start; i < start + level; ++i) s += x_at(digits, i, qa, qb);
        }
        return s;
    }
};

// Union of the base-b cells of depth `digit_count` whose digit strings
// satisfy `qualifies`.
template <typename Pred>
IntervalUnion qualifying_cells(long base, long digit_count, const Int& ceiling, Pred qualifies) {
    Int total = int_pow(Int(base), static_cast<unsigned long>(digit_count));
    if (total > ceiling)
        throw BudgetExceeded("block-set enumeration over " + total.get_str() +
                                 " strings exceeds ceiling",
                             Rat(1));
    unsigned long count = total.get_ui();
    Rat scale = rat(Int(1), total);
    std::vector<long> digits(static_cast<size_t>(digit_count));
    std::vector<Interval> cells;
    for (unsigned long t = 0; t < count; ++t) {
        unsigned long v = t;
        for (long j = digit_count - 1; j >= 0; --j) {
            digits[static_cast<size_t>(j)] = static_cast<long>(v % base);
            v /= static_cast<unsigned long>(base);
        }
        if (qualifies(digits))
            cells.emplace_back(Rat(static_cast<unsigned long>(t)) * scale,
                               Rat(static_cast<unsigned long>(t + 1)) * scale);
    }
    return IntervalUnion::normalize(std::move(cells));
}

}  // namespace detail

struct BlockSets {
    IntervalUnion y_up;
    IntervalUnion y_low;
    IntervalUnion z_up;
};

// The N' = N term of each deviation family, built exactly over digit
// strings and padded by the stated Minkowski radii.
// y_up : |sum_{k<=N} Y_k - LMN(a'-a)|  > (1+1/M) sqrt(LM) sigma_M phi_N,
//        padded by 2^-N b^-((MN+1)L).
// y_low: for all k = 2..N, |sum_{k'<=N^k} Y_k' - LMN^k(a'-a)| below
//        (1-1/M) sqrt(LM) sigma_M phi_(N^k), each padded by
//        2^-(N^k) b^-((M N^k + 1) L) / N, then intersected.
// z_up : |sum_{k<=N} Z_k - LN(a'-a)|  > 2 sqrt(L) sigma_1 phi_N,
//        padded by 2^-N b^-((N+1)L).
inline BlockSets build_block_sets(const BadicPair& pair, long m_mult, long n_blocks,
                                  const Int& ceiling = int_pow(2, 24)) {
    if (m_mult < 1 || n_blocks < 1) throw std::invalid_argument("block set sizes must be >= 1");
    long l = pair.level, b = pair.base;
    detail::BlockLayout layout{b, l, m_mult};
    long stride = l * m_mult + l;
    Rat width = pair.width();
    Rat sigma_m = sigma_sq_exact(pair, m_mult);
    Rat sigma_1 = sigma_sq_exact(pair, 1);

    // y_up over N blocks.
    long d_y = n_blocks * stride - l + (l - 1);
    Rat mean_y = Rat(Int(l) * Int(m_mult) * Int(n_blocks)) * width;
    Rat coef_up = rat_pow(1 + rat(1, m_mult), 2) * Int(l) * Int(m_mult) * sigma_m;
    IntervalUnion y_up = detail::qualifying_cells(b, d_y, ceiling, [&](const auto& digits) {
        Rat dev = Rat(layout.y_sum(digits, n_blocks, pair.qa, pair.qb)) - mean_y;
        return detail::deviation_exceeds(dev * dev, coef_up, Int(n_blocks));
    });
    Rat pad_y = pow2(-n_blocks) *
                rat(Int(1), int_pow(Int(b), static_cast<unsigned long>((m_mult * n_blocks + 1) * l)));
    y_up = y_up.pad_translate(Rat(0), pad_y);

    // y_low: intersection over checkpoint scales N^k, k = 2..N.
    IntervalUnion y_low;
    Rat coef_low = rat_pow(1 - rat(1, m_mult), 2) * Int(l) * Int(m_mult) * sigma_m;
    bool first = true;
    for (long k = 2; k <= n_blocks; ++k) {
        Int scale_blocks = int_pow(Int(n_blocks), static_cast<unsigned long>(k));
        long nk = static_cast<long>(scale_blocks.get_si());
        long d_k = nk * stride - l + (l - 1);
        Rat mean_k = Rat(Int(l) * Int(m_mult) * Int(nk)) * width;
        IntervalUnion event = detail::qualifying_cells(b, d_k, ceiling, [&](const auto& digits) {
            Rat dev = Rat(layout.y_sum(digits, nk, pair.qa, pair.qb)) - mean_k;
            return detail::deviation_below(dev * dev, coef_low, Int(nk));
        });
        Rat pad_k =
            pow2(-nk) *
            rat(Int(1), int_pow(Int(b), static_cast<unsigned long>((m_mult * nk + 1) * l))) /
            Int(n_blocks);
        event = event.pad_translate(Rat(0), pad_k);
        y_low = first ? event : IntervalUnion::intersect(y_low, event);
        first = false;
    }

    // z_up over N blocks.
    long d_z = n_blocks * stride + (l - 1);
    Rat mean_z = Rat(Int(l) * Int(n_blocks)) * width;
    Rat coef_z = Rat(4) * Int(l) * sigma_1;
    IntervalUnion z_up = detail::qualifying_cells(b, d_z, ceiling, [&](const auto& digits) {
        Rat dev = Rat(layout.z_sum(digits, n_blocks, pair.qa, pair.qb)) - mean_z;
        return detail::deviation_exceeds(dev * dev, coef_z, Int(n_blocks));
    });
    Rat pad_z = pow2(-n_blocks) *
                rat(Int(1), int_pow(Int(b), static_cast<unsigned long>((n_blocks + 1) * l)));
    z_up = z_up.pad_translate(Rat(0), pad_z);

    return BlockSets{std::move(y_up), std::move(y_low), std::move(z_up)};
}

// Smallest power-of-two block scale N with all walk-bound validity
// thresholds met and
//   up_tail(1/M, N) + low_tail(N) + up_tail(1, N) + 3 * 2^-N < 2^-M r,
// the three Minkowski corrections included (bounded by 2^-min(N,64) each so
// the certificate stays a manageable rational).
inline Int find_block_scale(const Rat& r, long m_mult, const BadicPair& pair) {
    if (r <= 0 || r >= 1) throw std::invalid_argument("find_block_scale needs 0 < r < 1");
    Rat sigma_m = sigma_sq_exact(pair, m_mult);
    Rat sigma_1 = sigma_sq_exact(pair, 1);
    if (sigma_m == 0 || sigma_1 == 0)
        throw std::invalid_argument("degenerate pair: zero block variance");
    Int lm = Int(pair.level) * Int(m_mult);
    RwParams y_params{rat(1, m_mult), Rat(lm) * sigma_m, Rat(lm), Int(1)};
    RwParams z_params{Rat(1), Rat(pair.level) * sigma_1, Rat(pair.level), Int(1)};
    RwThresholds y_thr = rw_thresholds(y_params);
    RwThresholds z_thr = rw_thresholds(z_params);
    Rat target = pow2(-m_mult) * r;
    for (long t = 1; t <= 200; ++t) {
        Int n = int_pow(2, static_cast<unsigned long>(t));
        if (Rat(n) < y_thr.a_delta || Rat(n) < y_thr.a_prime || Rat(n) < z_thr.a_delta) continue;
        y_params.n0 = n;
        z_params.n0 = n;
        // The three Minkowski corrections are each <= 2^-N; cap the exponent
        // at 64 so the certificate stays a manageable rational.
        long mink_exp = (t >= 7) ? 64 : (1L << t);
        Rat total = rw_tails(y_params).up_raw + rw_tails(y_params).low_raw +
                    rw_tails(z_params).up_raw + 3 * pow2(-mink_exp);
        if (total < target) return n;
    }
    throw InvariantViolation("no admissible block scale below 2^200");
}

// ---------------------------------------------------------------------------
// Dyadic discretization machinery.

// The refinement functions rho_{h,eps}: for non-terminal h, the indicator of
// [alpha_h, alpha_{h+1}) minus its length, where alpha_h = K/2^L plus the
// dyadic digits eps_{L+1}..eps_h of the right endpoint; for terminal h, the
// indicator of [alpha_h, alpha_h + 2^-h) minus 2^-h.
inline Rat philipp_rho(const Rat& x, long h, const std::vector<int>& eps, long level, const Int& k,
                       bool terminal) {
    if (h < level) throw std::invalid_argument("refinement index below base level");
    Rat alpha = rat(k, int_pow(2, static_cast<unsigned long>(level)));
    for (long j = level + 1; j <= h; ++j) {
        size_t idx = static_cast<size_t>(j - level - 1);
        if (idx < eps.size() && eps[idx]) alpha += pow2(-j);
    }
    Rat lo = alpha, hi;
    Rat mean;
    if (terminal) {
        hi = alpha + pow2(-h);
        mean = pow2(-h);
    } else {
        size_t idx = static_cast<size_t>(h - level);
        Rat step = (idx < eps.size() && eps[idx]) ? pow2(-(h + 1)) : Rat(0);
        hi = alpha + step;
        mean = step;
    }
    Rat fx = fractional(x);
    Rat indicator = (lo <= fx && fx < hi) ? Rat(1) : Rat(0);
    return indicator - mean;
}

// F = |sum_{k=M+1}^{M+N} rho(b^k x)|, exact by direct summation.
inline Rat philipp_eval(const Rat& x, long m_from, long n_count, long h,
                        const std::vector<int>& eps, long level, const Int& k, long base,
                        bool terminal = false) {
    Rat sum = 0;
    // rho only sees the fractional part, so reduce mod 1 as we scale to keep
    // numerators from growing like b^k.
    Rat scaled = fractional(x);
    for (long i = 1; i <= m_from; ++i) scaled = fractional(scaled * base);
    for (long i = 1; i <= n_count; ++i) {
        scaled = fractional(scaled * base);
        sum += philipp_rho(scaled, h, eps, level, k, terminal);
    }
    return abs(sum);
}

struct PhilippConstants {
    long c_p;       // 100
    long h_levels;  // H(N) = floor(log N / log 4) + 1
    Int n_l;        // n_L(r) = max(10^6, ceil(200 * 2^(2L) / r)) + 1
    long base;

    Rat delta(long n) const {
        return rat(Int(1), int_pow(Int(4 * base), static_cast<unsigned long>(n + 1)));
    }
    Rat delta_hat(long n) const {
        return rat(Int(1), int_pow(Int(8 * base), static_cast<unsigned long>(n + 1)));
    }
};

inline long h_of(const Int& n) {
    if (n < 1) throw std::invalid_argument("H(N) needs N >= 1");
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);  // floor(log2 N) + 1
    return static_cast<long>((bits - 1) / 2) + 1;
}

inline PhilippConstants philipp_constants(long base, long level, const Rat& r, const Int& n) {
    if (r <= 0) throw std::invalid_argument("philipp_constants needs r > 0");
    Int cutoff = ceil_rat(Rat(200) * int_pow(2, 2 * static_cast<unsigned long>(level)) / r);
    Int floor_n(1000000);
    return PhilippConstants{100, h_of(n), std::max(floor_n, cutoff) + 1, base};
}

// ---------------------------------------------------------------------------
// Radius bookkeeping.

struct RadiusPlan {
    std::vector<std::pair<std::string, Rat>> entries;
    Rat total;       // exact sum of every share incl. the L-tail bound
    Rat budget;      // the per-base r the plan must stay below
    bool certified;  // total < budget, checked exactly
};

// The radius plan for one base: the dyadic-discretization cover gets r/2,
// each level-L pair (k < k') gets 2^-(L+1) b^-2L r, and levels above L_max
// are covered by the geometric tail bound 2^-(L_max+2) r. The "base" entry
// records the share this base receives inside the all-bases union, 2^-b r.
inline RadiusPlan radius_plan(long base, const Rat& r, long l_max) {
    if (base < 2 || l_max < 1 || r <= 0 || r > 1)
        throw std::invalid_argument("radius plan needs base >= 2, L_max >= 1, 0 < r <= 1");
    RadiusPlan plan;
    plan.budget = r;
    plan.entries.emplace_back("base", pow2(-base) * r);
    plan.entries.emplace_back("D", r / 2);
    Rat total = r / 2;
    for (long l = 1; l <= l_max; ++l) {
        Int cells = int_pow(Int(base), static_cast<unsigned long>(l));
        Rat share = pow2(-(l + 1)) * rat(Int(1), cells * cells) * r;
        Int pairs = cells * (cells - 1) / 2;
        if (cells <= 16) {
            for (Int k = 0; k < cells; ++k)
                for (Int k2 = k + 1; k2 < cells; ++k2)
                    plan.entries.emplace_back("L" + std::to_string(l) + ":" + k.get_str() + "-" +
                                                  k2.get_str(),
                                              share);
        } else {
            plan.entries.emplace_back("L" + std::to_string(l) + ":" + pairs.get_str() + "-pairs",
                                      Rat(pairs) * share);
        }
        total += Rat(pairs) * share;
    }
    Rat l_tail = pow2(-(l_max + 2)) * r;
    plan.entries.emplace_back("L-tail", l_tail);
    total += l_tail;
    plan.total = total;
    plan.certified = total < r;
    if (!plan.certified)
        throw InvariantViolation("radius plan total " + to_string(total) + " not below " +
                                 to_string(r));
    return plan;
}

// Constant bundle for one base.
struct LilParams {
    long base;
    Enclosure l_constant;
    PhilippConstants philipp;
};

inline LilParams lil_params(long base, long level, const Rat& r, const Int& n) {
    return LilParams{base, lil_constant(base), philipp_constants(base, level, r, n)};
}

}  // namespace normnum

#endif
