#ifndef NORMNUM_POLYNOMIAL_HPP
#define NORMNUM_POLYNOMIAL_HPP

// Integer polynomials with zero constant term, their canonical enumeration,
// degree constants, interval range enclosures and certified dyadic preimage
// approximation.

#include "normnum/interval.hpp"
#include "normnum/rational.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace normnum {

// p(x) = sum_{k=1..d} a_k x^k + offset. The coefficient family always has
// zero constant term; the rational offset supports shifted evaluation
// (q = p - a) without leaving exact arithmetic.
class IntPolynomial {
  public:
    explicit IntPolynomial(std::vector<Int> coeffs, Rat offset = Rat(0))
        : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty())
            throw std::invalid_argument("polynomial must have a nonzero coefficient");
    }

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()); }

    // 1-based; coeff(k) is the coefficient of x^k.
    const Int& coeff(unsigned k) const { return coeffs_.at(k - 1); }
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Rat& offset() const { return offset_; }

    IntPolynomial with_offset(Rat offset) const {
        IntPolynomial p(*this);
        p.offset_ = std::move(offset);
        return p;
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc * x + offset_;
    }

    Rat eval_derivative(const Rat& x) const {
        Rat acc = 0;
        for (unsigned k = degree(); k >= 1; --k) acc = acc * x + Rat(k * coeffs_[k - 1]);
        return acc;
    }

    // ||p||_P = sum 2^k |a_k|.
    Int pnorm() const {
        Int n = 0;
        for (unsigned k = 1; k <= degree(); ++k) n += int_pow(2, k) * abs(coeffs_[k - 1]);
        return n;
    }

    // Lipschitz constant on [0,1]: L_p = sum k |a_k|.
    Int lipschitz() const {
        Int l = 0;
        for (unsigned k = 1; k <= degree(); ++k) l += Int(k) * abs(coeffs_[k - 1]);
        return l;
    }

    std::string to_string() const {
        std::string s;
        for (unsigned k = degree(); k >= 1; --k) {
            const Int& a = coeffs_[k - 1];
            if (a == 0) continue;
            if (!s.empty()) s += (a > 0) ? "+" : "-";
            else if (a < 0) s += "-";
            Int m = abs(a);
            if (m != 1) s += m.get_str();
            s += "x";
            if (k > 1) s += "^" + std::to_string(k);
        }
        if (offset_ != 0) {
            if (offset_ > 0) s += "+";
            s += normnum::to_string(offset_);
        }
        return s;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_ && a.offset_ == b.offset_;
    }

  private:
    std::vector<Int> coeffs_;
    Rat offset_;
};

// Strict "comes before" in the canonical total order: smaller ||.||_P first;
// at equal norm the polynomial with the LARGER coefficient at the first
// differing index comes first.
inline bool poly_before(const IntPolynomial& p, const IntPolynomial& q) {
    Int np = p.pnorm(), nq = q.pnorm();
    if (np != nq) return np < nq;
    unsigned dmax = std::max(p.degree(), q.degree());
    for (unsigned k = 1; k <= dmax; ++k) {
        Int a = k <= p.degree() ? p.coeff(k) : Int(0);
        Int b = k <= q.degree() ? q.coeff(k) : Int(0);
        if (a != b) return a > b;
    }
    return false;
}

namespace detail {

inline void ball_rec(unsigned k, const Int& remaining, std::vector<Int>& current,
                     std::vector<IntPolynomial>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    Int weight = int_pow(2, k);
    if (weight > remaining) return;
    Int tmax = remaining / weight;
    for (Int t = 0; t <= tmax; ++t) {
        if (t == 0) {
            current.push_back(0);
            ball_rec(k + 1, remaining, current, out);
            current.pop_back();
        } else {
            for (int sign : {+1, -1}) {
                current.push_back(sign * t);
                ball_rec(k + 1, remaining - t * weight, current, out);
                current.pop_back();
            }
        }
    }
}

}  // namespace detail

// All polynomials with ||p||_P exactly `norm`, sorted by the canonical order.
inline std::vector<IntPolynomial> poly_sphere(const Int& norm) {
    std::vector<IntPolynomial> out;
    if (norm < 2 || norm % 2 != 0) return out;
    std::vector<Int> current;
    detail::ball_rec(1, norm, current, out);
    std::sort(out.begin(), out.end(), poly_before);
    return out;
}

// First `count` polynomials of the canonical enumeration, p_1 = x first.
inline std::vector<IntPolynomial> enumerate_prefix(size_t count) {
    std::vector<IntPolynomial> out;
    out.reserve(count);
    for (Int norm = 2; out.size() < count; norm += 2) {
        for (auto& p : poly_sphere(norm)) {
            out.push_back(std::move(p));
            if (out.size() == count) break;
        }
    }
    return out;
}

// The k-th polynomial under the canonical order, k >= 1.
inline IntPolynomial enumerate_kth(size_t k) {
    if (k < 1) throw std::invalid_argument("enumeration index starts at 1");
    return enumerate_prefix(k).back();
}

struct PolyConstants {
    unsigned degree;
    Int pnorm;
    Int lipschitz;
    Int stretch_K;   // K_d = 4 d^4 (d+1)^(d+1)
    Int singular_C;  // C_d = (d+1)^(d(d+1))
};

inline Int stretch_constant(unsigned d) {
    return 4 * int_pow(Int(d), 4) * int_pow(Int(d + 1), d + 1);
}

inline Int singular_constant(unsigned d) {
    return int_pow(Int(d + 1), static_cast<unsigned long>(d) * (d + 1));
}

inline PolyConstants poly_constants(const IntPolynomial& p) {
    unsigned d = p.degree();
    if (d < 1) throw std::invalid_argument("constants need degree >= 1");
    return PolyConstants{d, p.pnorm(), p.lipschitz(), stretch_constant(d), singular_constant(d)};
}

// Certified upper bound on the measure of p^{-1}(A) ∩ [0,1] over all A with
// mu(A) <= delta: min(1, K_d delta^(1/d)), the d-th root rounded up so the
// result stays a certificate. Clipped at 1 since it bounds a measure in [0,1].
inline Rat stretch_bound(const IntPolynomial& p, const Rat& delta) {
    if (delta < 0) throw std::invalid_argument("stretch_bound needs delta >= 0");
    if (delta == 0) return Rat(0);
    unsigned d = p.degree();
    Rat bound = Rat(stretch_constant(d)) * rat_root_upper(delta, d);
    return bound < 1 ? bound : Rat(1);
}

namespace detail {

// Lipschitz constant of p on [-M, M] (M >= 1): sum k |a_k| M^(k-1).
inline Rat lipschitz_on(const IntPolynomial& p, const Rat& m) {
    Rat l = 0;
    Rat mp = 1;
    for (unsigned k = 1; k <= p.degree(); ++k) {
        l += Rat(k) * Rat(abs(p.coeff(k))) * mp;
        mp *= m;
    }
    return l;
}

inline Rat lipschitz_deriv_on(const IntPolynomial& p, const Rat& m) {
    Rat l = 0;
    Rat mp = 1;
    for (unsigned k = 2; k <= p.degree(); ++k) {
        l += Rat(k) * Rat(k - 1) * Rat(abs(p.coeff(k))) * mp;
        mp *= m;
    }
    return l;
}

inline Rat max3(const Rat& a, const Rat& b, const Rat& c) {
    return std::max(a, std::max(b, c));
}

}  // namespace detail

// Sound range enclosure of {p(x) : x in closure(D)}: the Lipschitz slab
// p(mid) ± L·width/2, with L the Lipschitz constant on the smallest
// [-M, M] ⊇ D, M >= 1. Width decays like L_p * width(D) on [0,1].
inline Interval eval_on_interval(const IntPolynomial& p, const Interval& d) {
    Rat m = detail::max3(Rat(1), abs(d.lo), abs(d.hi));
    Rat mid = (d.lo + d.hi) / 2;
    Rat half_width = detail::lipschitz_on(p, m) * (d.hi - d.lo) / 2;
    Rat c = p.eval(mid);
    return Interval(c - half_width, c + half_width);
}

// Same slab construction for p'; used to certify monotonicity on a cell.
inline Interval derivative_range(const IntPolynomial& p, const Interval& d) {
    Rat m = detail::max3(Rat(1), abs(d.lo), abs(d.hi));
    Rat mid = (d.lo + d.hi) / 2;
    Rat half_width = detail::lipschitz_deriv_on(p, m) * (d.hi - d.lo) / 2;
    Rat c = p.eval_derivative(mid);
    return Interval(c - half_width, c + half_width);
}

namespace detail {

// Slab with the Lipschitz constant taken on the cell itself rather than on
// [0,1]. Near a flat point of p the global slab stays coarse relative to the
// function and the subdivision degenerates; the local constant keeps the
// number of unresolved cells per depth bounded.
inline Interval eval_local(const IntPolynomial& p, const Rat& s, const Rat& t) {
    Rat m = max3(Rat(0), abs(s), abs(t));
    Rat mid = (s + t) / 2;
    Rat half_width = lipschitz_on(p, m) * (t - s) / 2;
    Rat c = p.eval(mid);
    return Interval(c - half_width, c + half_width);
}

inline Interval deriv_local(const IntPolynomial& p, const Rat& s, const Rat& t) {
    Rat m = max3(Rat(0), abs(s), abs(t));
    Rat mid = (s + t) / 2;
    Rat half_width = lipschitz_deriv_on(p, m) * (t - s) / 2;
    Rat c = p.eval_derivative(mid);
    return Interval(c - half_width, c + half_width);
}

// If p is certifiably monotone on [s,t] (derivative of weak constant sign),
// the image of the open cell is exactly the open interval between the
// endpoint values; containment may then hold with equality at the endpoints.
inline bool open_image_inside(const IntPolynomial& p, const Rat& s, const Rat& t,
                              const Interval& target) {
    Interval dr = deriv_local(p, s, t);
    if (dr.lo < 0 && dr.hi > 0) return false;
    Rat ps = p.eval(s), pt = p.eval(t);
    const Rat& lo = ps < pt ? ps : pt;
    const Rat& hi = ps < pt ? pt : ps;
    return target.lo <= lo && hi <= target.hi;
}

struct PreimageScan {
    const IntPolynomial& p;
    const Interval& target;
    long depth_max;
    std::vector<Interval> cells;

    void scan(const Rat& s, const Rat& t, long depth) {
        Interval enc = eval_local(p, s, t);
        if (enc.hi <= target.lo || enc.lo >= target.hi) return;
        if ((target.lo < enc.lo && enc.hi < target.hi) || open_image_inside(p, s, t, target)) {
            cells.emplace_back(s, t);
            return;
        }
        if (depth >= depth_max) {
            if (target.contains(p.eval(s)) && target.contains(p.eval(t)))
                cells.emplace_back(s, t);
            return;
        }
        Rat mid = (s + t) / 2;
        scan(s, mid, depth + 1);
        scan(mid, t, depth + 1);
    }
};

}  // namespace detail

// Grid depth for the dyadic preimage approximation: smallest H such that the
// two boundary strips of total measure 8 L_p 2^-H have stretch bound
// K_d (8 L_p 2^-H)^(1/d) <= 2^-m, i.e. 2^H >= 8 L_p K_d^d 2^(m d).
inline long preimage_grid_depth(const IntPolynomial& p, long m) {
    unsigned d = p.degree();
    Int k_pow = int_pow(stretch_constant(d), d);
    return static_cast<long>(m) * d + ceil_log2(8 * p.lipschitz() * k_pow);
}

// Dyadic approximation V of p^{-1}(I) ∩ [0,1] with
// mu(V Δ (p^{-1}(I) ∩ [0,1])) <= 2^-m: the union of depth-H grid cells whose
// endpoints evaluate into I, assembled by adaptive subdivision (cells whose
// range enclosure lands inside I are kept whole, cells whose enclosure
// misses I are dropped whole).
inline IntervalUnion preimage_dyadic(const IntPolynomial& p, const Interval& i, long m) {
    if (m < 0) throw std::invalid_argument("preimage precision must be >= 0");
    if (i.empty()) return IntervalUnion();
    detail::PreimageScan scan{p, i, preimage_grid_depth(p, m), {}};
    scan.scan(Rat(0), Rat(1), 0);
    return IntervalUnion::normalize(std::move(scan.cells));
}

namespace detail {

// One-sided Jacobi (Hestenes) singular values; accurate for the tiny
// smallest singular values of the moment matrices below.
inline double least_singular_value(std::vector<std::array<double, 16>>& cols, unsigned n) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (unsigned q1 = 0; q1 + 1 < n; ++q1) {
            for (unsigned q2 = q1 + 1; q2 < n; ++q2) {
                double alpha = 0, beta = 0, gamma = 0;
                for (unsigned r = 0; r < n; ++r) {
                    alpha += cols[q1][r] * cols[q1][r];
                    beta += cols[q2][r] * cols[q2][r];
                    gamma += cols[q1][r] * cols[q2][r];
                }
                off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
                if (gamma == 0) continue;
                double zeta = (beta - alpha) / (2 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                double c = 1 / std::sqrt(1 + t * t);
                double s = c * t;
                for (unsigned r = 0; r < n; ++r) {
                    double u = cols[q1][r], v = cols[q2][r];
                    cols[q1][r] = c * u - s * v;
                    cols[q2][r] = s * u + c * v;
                }
            }
        }
        if (off < 1e-15) break;
    }
    double smin = -1;
    for (unsigned q = 0; q < n; ++q) {
        double norm = 0;
        for (unsigned r = 0; r < n; ++r) norm += cols[q][r] * cols[q][r];
        norm = std::sqrt(norm);
        if (smin < 0 || norm < smin) smin = norm;
    }
    return smin;
}

}  // namespace detail

// Numeric least singular value of the (d+1)x(d+1) moment matrix with entries
// i^(j-1), i = 1..d+1.
inline double moment_matrix_least_singular(unsigned d) {
    if (d < 1 || d > 8) throw std::invalid_argument("moment matrix check supports 1 <= d <= 8");
    unsigned n = d + 1;
    std::vector<std::array<double, 16>> cols(n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) cols[j][i] = std::pow(double(i + 1), double(j));
    return detail::least_singular_value(cols, n);
}

// Checks the floor s_1 >= 1/C_d with a small relative guard for the numeric
// SVD. Expected true for all supported d.
inline bool singular_floor_check(unsigned d) {
    double smin = moment_matrix_least_singular(d);
    double floor = std::pow(double(d + 1), -double(d) * double(d + 1));
    return smin * (1.0 - 0x1.0p-20) >= floor;
}

}  // namespace normnum

#endif
