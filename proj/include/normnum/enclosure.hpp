#ifndef NORMNUM_ENCLOSURE_HPP
#define NORMNUM_ENCLOSURE_HPP

// Certified rational enclosures of irrational constants.
//
// Every transcendental quantity used by the LIL layer (square roots, exp,
// log, the phi_N = sqrt(2 N loglog N) normalizer) is represented as a
// rational interval [lo, hi] proven to contain the true value. Consumers
// pick the endpoint with the sound rounding direction: thresholds round up,
// radii down, tail bounds up.

#include "normnum/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace normnum {

struct Enclosure {
    Rat lo;
    Rat hi;

    Enclosure(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("inverted enclosure");
    }
    static Enclosure exact(Rat v) { return Enclosure(v, v); }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool is_exact() const { return lo == hi; }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo + b.lo, a.hi + b.hi);
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo - b.hi, a.hi - b.lo);
    }
    // Both operands non-negative; sufficient for every use here.
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        if (a.lo < 0 || b.lo < 0) throw std::invalid_argument("enclosure product needs non-negative operands");
        return Enclosure(a.lo * b.lo, a.hi * b.hi);
    }
    friend Enclosure operator*(const Rat& c, const Enclosure& a) {
        if (c >= 0) return Enclosure(c * a.lo, c * a.hi);
        return Enclosure(c * a.hi, c * a.lo);
    }
};

// sqrt(x) for rational x >= 0, width <= 2^-precision_bits. Exact when x is a
// perfect rational square.
inline Enclosure sqrt_enclosure(const Rat& x, unsigned long precision_bits = 32) {
    if (x < 0) throw std::invalid_argument("sqrt of negative rational");
    if (x == 0) return Enclosure::exact(Rat(0));
    // sqrt(n/d) = sqrt(n*d)/d; scale so the integer sqrt carries enough bits.
    Int nd = x.get_num() * x.get_den();
    Int root = root_floor(nd, 2);
    if (root * root == nd) return Enclosure::exact(rat(root, x.get_den()));
    unsigned long s = precision_bits + 1 + static_cast<unsigned long>(
                          std::max(0L, ceil_log2(x.get_den())));
    Int scaled = nd * int_pow(4, s);
    Int r = root_floor(scaled, 2);
    Int den = x.get_den() * int_pow(2, s);
    return Enclosure(rat(r, den), rat(r + 1, den));
}

namespace detail {

// ln(x) for rational x in [1, 2), via the atanh series
//   ln(x) = 2 * sum_{j>=0} z^(2j+1) / (2j+1),  z = (x-1)/(x+1) in [0, 1/3],
// with the geometric tail bounded by z^(2J+3) / ((2J+3) (1 - z^2)).
inline Enclosure log_reduced(const Rat& x, unsigned long precision_bits) {
    if (x < 1 || x >= 2) throw std::logic_error("log_reduced domain");
    if (x == 1) return Enclosure::exact(Rat(0));
    Rat z = (x - 1) / (x + 1);
    Rat z2 = z * z;
    Rat term = z;
    Rat sum = 0;
    Rat tail_target = pow2(-static_cast<long>(precision_bits + 2));
    unsigned long j = 0;
    Rat tail;
    for (;;) {
        sum += term / Rat(2 * j + 1);
        term *= z2;
        ++j;
        tail = term / (Rat(2 * j + 1) * (1 - z2));
        if (2 * tail <= tail_target) break;
        if (j > 4096) throw std::logic_error("log series failed to converge");
    }
    return Enclosure(2 * sum, 2 * (sum + tail));
}

inline Enclosure ln2_enclosure(unsigned long precision_bits) {
    // ln 2 = 2 atanh(1/3): reuse the reduced series at x = 2 - eps is not
    // possible, so evaluate directly: ln 2 = -ln(1/2)... simplest is the
    // same series with z = 1/3.
    Rat z = rat(1, 3);
    Rat z2 = z * z;
    Rat term = z;
    Rat sum = 0;
    Rat tail_target = pow2(-static_cast<long>(precision_bits + 2));
    unsigned long j = 0;
    Rat tail;
    for (;;) {
        sum += term / Rat(2 * j + 1);
        term *= z2;
        ++j;
        tail = term / (Rat(2 * j + 1) * (1 - z2));
        if (2 * tail <= tail_target) break;
        if (j > 4096) throw std::logic_error("ln2 series failed to converge");
    }
    return Enclosure(2 * sum, 2 * (sum + tail));
}

}  // namespace detail

// ln(x) for rational x > 0.
inline Enclosure log_enclosure(const Rat& x, unsigned long precision_bits = 32) {
    if (x <= 0) throw std::invalid_argument("log of non-positive rational");
    // x = 2^e * y with y in [1, 2).
    long e = 0;
    Rat y = x;
    while (y >= 2) {
        y /= 2;
        ++e;
    }
    while (y < 1) {
        y *= 2;
        --e;
    }
    Enclosure ln_y = detail::log_reduced(y, precision_bits + 4);
    if (e == 0) return ln_y;
    long ae = e < 0 ? -e : e;
    Enclosure ln2 = detail::ln2_enclosure(precision_bits + 4 + ceil_log2(Int(ae) + 1));
    Rat c(e);
    return Enclosure(ln_y.lo, ln_y.hi) + c * ln2;
}

// exp(x) for rational x (any sign), relative width ~2^-precision_bits.
inline Enclosure exp_enclosure(const Rat& x, unsigned long precision_bits = 32) {
    if (x == 0) return Enclosure::exact(Rat(1));
    if (x < 0) {
        Enclosure pos = exp_enclosure(-x, precision_bits + 2);
        return Enclosure(1 / pos.hi, 1 / pos.lo);
    }
    // Argument reduction: exp(x) = exp(x/2^s)^(2^s) with x/2^s <= 1/2.
    unsigned long s = 0;
    Rat y = x;
    while (y > rat(1, 2)) {
        y /= 2;
        ++s;
    }
    // Series with remainder: for 0 < y <= 1/2,
    //   exp(y) = sum_{k<=K} y^k/k! + R,  0 < R <= y^(K+1)/(K+1)! * 2.
    Rat sum = 1;
    Rat term = 1;
    Rat tail_target = pow2(-static_cast<long>(precision_bits + 2 + 2 * s));
    unsigned long k = 0;
    Rat rem;
    for (;;) {
        ++k;
        term *= y / Rat(k);
        sum += term;
        rem = 2 * term * y / Rat(k + 1);
        if (rem <= tail_target * sum) break;
        if (k > 4096) throw std::logic_error("exp series failed to converge");
    }
    Enclosure e(sum, sum + rem);
    for (unsigned long i = 0; i < s; ++i) e = e * e;
    return e;
}

// loglog(N) = ln(ln N) for integer N >= 3 (positive there).
inline Enclosure loglog_enclosure(const Int& n, unsigned long precision_bits = 32) {
    if (n < 3) throw std::invalid_argument("loglog needs N >= 3");
    Enclosure ln_n = log_enclosure(Rat(n), precision_bits + 8);
    if (ln_n.lo <= 1) throw std::logic_error("loglog reduction failed");
    Enclosure lo = log_enclosure(ln_n.lo, precision_bits + 4);
    Enclosure hi = log_enclosure(ln_n.hi, precision_bits + 4);
    return Enclosure(lo.lo, hi.hi);
}

// phi_N = sqrt(2 N loglog N). The LIL normalizer is only meaningful for
// N >= 3; below that loglog is non-positive and the threshold degenerates,
// so phi is defined as exactly 0 (any deviation exceeds it).
inline Enclosure phi_enclosure(const Int& n, unsigned long precision_bits = 32) {
    if (n <= 2) return Enclosure::exact(Rat(0));
    Enclosure ll = loglog_enclosure(n, precision_bits + 4);
    Rat two_n = Rat(2 * n);
    Enclosure sq_lo = sqrt_enclosure(two_n * ll.lo, precision_bits + 2);
    Enclosure sq_hi = sqrt_enclosure(two_n * ll.hi, precision_bits + 2);
    return Enclosure(sq_lo.lo, sq_hi.hi);
}

// phi_N^2 = 2 N loglog N, used for squared threshold comparisons.
inline Enclosure phi_sq_enclosure(const Int& n, unsigned long precision_bits = 32) {
    if (n <= 2) return Enclosure::exact(Rat(0));
    Enclosure ll = loglog_enclosure(n, precision_bits);
    return Rat(2 * n) * ll;
}

}  // namespace normnum

#endif
