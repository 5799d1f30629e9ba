#ifndef NORMNUM_RATIONAL_HPP
#define NORMNUM_RATIONAL_HPP

// Exact arithmetic primitives shared by the whole library.
//
// All set measures, cover radii and tail bounds in this library are exact
// rationals (GMP mpq). Irrational quantities never appear as values; they
// are handled as rational enclosures (see enclosure.hpp) or as certified
// one-sided bounds produced by the integer root helpers below.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace normnum {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; every construction from a
// num/den pair must go through here.
inline Rat rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline Rat rat(long num, long den) { return rat(Int(num), Int(den)); }

// 2^e for any sign of e.
inline Rat pow2(long e) {
    Rat q;
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), Rat(1).get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), Rat(1).get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return q;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    return rat(int_pow(base.get_num(), e), int_pow(base.get_den(), e));
}

inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// floor(n^(1/d)) for n >= 0.
inline Int root_floor(const Int& n, unsigned long d) {
    if (n < 0) throw std::invalid_argument("root of negative integer");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), d);
    return r;
}

inline Int root_ceil(const Int& n, unsigned long d) {
    Int r = root_floor(n, d);
    if (int_pow(r, d) != n) r += 1;
    return r;
}

// Certified bounds on x^(1/d) for rational x >= 0.  `guard_bits` controls
// tightness: the bound is exact up to a relative error of about 2^-guard_bits.
// Upper: ceil(ceil(x*2^(d*s))^(1/d)) / 2^s  >=  x^(1/d).
inline Rat rat_root_upper(const Rat& x, unsigned long d, unsigned long guard_bits = 48) {
    if (x < 0) throw std::invalid_argument("root of negative rational");
    if (x == 0 || d == 1) return x;
    Rat scaled = x * pow2(static_cast<long>(d * guard_bits));
    return rat(root_ceil(ceil_rat(scaled), d), int_pow(2, guard_bits));
}

inline Rat rat_root_lower(const Rat& x, unsigned long d, unsigned long guard_bits = 48) {
    if (x < 0) throw std::invalid_argument("root of negative rational");
    if (x == 0 || d == 1) return x;
    Rat scaled = x * pow2(static_cast<long>(d * guard_bits));
    return rat(root_floor(floor_rat(scaled), d), int_pow(2, guard_bits));
}

// x^(u/v), certified one-sided, for rational x >= 0 and exponent u/v > 0.
inline Rat rat_pow_upper(const Rat& x, const Rat& exponent, unsigned long guard_bits = 48) {
    unsigned long u = exponent.get_num().get_ui();
    unsigned long v = exponent.get_den().get_ui();
    return rat_root_upper(rat_pow(x, u), v, guard_bits);
}

inline Rat rat_pow_lower(const Rat& x, const Rat& exponent, unsigned long guard_bits = 48) {
    unsigned long u = exponent.get_num().get_ui();
    unsigned long v = exponent.get_den().get_ui();
    return rat_root_lower(rat_pow(x, u), v, guard_bits);
}

// Smallest e with 2^e >= n, for n >= 1.
inline long ceil_log2(const Int& n) {
    if (n <= 0) throw std::invalid_argument("ceil_log2 of non-positive integer");
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Int pow = int_pow(2, bits - 1);
    return (pow >= n) ? static_cast<long>(bits - 1) : static_cast<long>(bits);
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rat& q) { return q.get_d(); }

// Parses "n" or "n/d". On bad input throws with the byte offset of the
// offending character, which the CLI surfaces verbatim.
inline Rat parse_rat(const std::string& text) {
    auto fail = [&](size_t pos, const std::string& what) {
        throw std::invalid_argument("malformed rational '" + text + "' at offset " +
                                    std::to_string(pos) + ": " + what);
    };
    if (text.empty()) fail(0, "empty string");
    size_t i = 0;
    auto scan_int = [&]() -> std::string {
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        size_t digits_from = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == digits_from) fail(i, "expected digit");
        return text.substr(start, i - start);
    };
    std::string num = scan_int();
    std::string den = "1";
    if (i < text.size()) {
        if (text[i] != '/') fail(i, std::string("unexpected character '") + text[i] + "'");
        ++i;
        den = scan_int();
        if (i != text.size()) fail(i, std::string("unexpected character '") + text[i] + "'");
    }
    Int d(den);
    if (d == 0) fail(text.find('/') + 1, "zero denominator");
    return rat(Int(num), d);
}

}  // namespace normnum

#endif
