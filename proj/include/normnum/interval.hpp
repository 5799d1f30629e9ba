#ifndef NORMNUM_INTERVAL_HPP
#define NORMNUM_INTERVAL_HPP

// Finite unions of open intervals with exact rational endpoints.
//
// This is the universal set representation of the library: every cover,
// cover atom, block set and preimage approximation is an IntervalUnion.
// Only open intervals are stored. Singletons and closed endpoints never
// appear; all consumers are measure-driven, so null boundaries are
// irrelevant. Two normalized parts may touch (hi == next.lo): the shared
// endpoint is excluded from both, so they describe different point sets
// than the merged interval and are kept separate.

#include "normnum/rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace normnum {

struct Interval {
    Rat lo;
    Rat hi;

    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

    Rat width() const { return hi - lo; }
    bool empty() const { return lo >= hi; }
    bool contains(const Rat& x) const { return lo < x && x < hi; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

class IntervalUnion {
  public:
    IntervalUnion() = default;

    // Canonical representation of the union of `raw`: empty-marked inputs
    // dropped, sorted by lo, overlapping parts merged. Idempotent and
    // insensitive to input order.
    static IntervalUnion normalize(std::vector<Interval> raw) {
        std::vector<Interval> kept;
        kept.reserve(raw.size());
        for (auto& iv : raw)
            if (!iv.empty()) kept.push_back(std::move(iv));
        if (!std::is_sorted(kept.begin(), kept.end(), lo_less))
            std::sort(kept.begin(), kept.end(), lo_less);
        std::vector<Interval> out;
        out.reserve(kept.size());
        for (auto& iv : kept) {
            // Merge only on genuine overlap; touching open intervals exclude
            // the shared point and must stay separate.
            if (!out.empty() && iv.lo < out.back().hi) {
                if (iv.hi > out.back().hi) out.back().hi = std::move(iv.hi);
            } else {
                out.push_back(std::move(iv));
            }
        }
        IntervalUnion u;
        u.parts_ = std::move(out);
        return u;
    }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    size_t size() const { return parts_.size(); }

    Rat measure() const {
        Rat m = 0;
        for (const auto& iv : parts_) m += iv.hi - iv.lo;
        return m;
    }

    // mu(U ∩ J), exact.
    Rat measure_within(const Interval& j) const {
        Rat m = 0;
        if (j.empty()) return m;
        for (const auto& iv : parts_) {
            if (iv.lo >= j.hi) break;
            if (iv.hi <= j.lo) continue;
            const Rat& lo = iv.lo > j.lo ? iv.lo : j.lo;
            const Rat& hi = iv.hi < j.hi ? iv.hi : j.hi;
            if (hi > lo) m += hi - lo;
        }
        return m;
    }

    bool contains(const Rat& x) const {
        // parts_ sorted by lo; find first part with lo >= x and look left.
        size_t lo = 0, hi = parts_.size();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (parts_[mid].lo < x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo > 0 && parts_[lo - 1].contains(x);
    }

    // {x + shift : x in U} Minkowski-summed with (-pad, pad), normalized.
    IntervalUnion pad_translate(const Rat& shift, const Rat& pad) const {
        if (pad < 0) throw std::invalid_argument("negative pad");
        std::vector<Interval> raw;
        raw.reserve(parts_.size());
        for (const auto& iv : parts_)
            raw.emplace_back(iv.lo + shift - pad, iv.hi + shift + pad);
        return normalize(std::move(raw));
    }

    static IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
        std::vector<Interval> raw = a.parts_;
        raw.insert(raw.end(), b.parts_.begin(), b.parts_.end());
        return normalize(std::move(raw));
    }

    static IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
        std::vector<Interval> raw;
        size_t i = 0, j = 0;
        while (i < a.parts_.size() && j < b.parts_.size()) {
            const Interval& x = a.parts_[i];
            const Interval& y = b.parts_[j];
            Rat lo = x.lo > y.lo ? x.lo : y.lo;
            Rat hi = x.hi < y.hi ? x.hi : y.hi;
            if (lo < hi) raw.emplace_back(std::move(lo), std::move(hi));
            if (x.hi < y.hi)
                ++i;
            else
                ++j;
        }
        return normalize(std::move(raw));
    }

    static Rat intersection_measure(const IntervalUnion& a, const IntervalUnion& b) {
        Rat m = 0;
        size_t i = 0, j = 0;
        while (i < a.parts_.size() && j < b.parts_.size()) {
            const Interval& x = a.parts_[i];
            const Interval& y = b.parts_[j];
            const Rat& lo = x.lo > y.lo ? x.lo : y.lo;
            const Rat& hi = x.hi < y.hi ? x.hi : y.hi;
            if (lo < hi) m += hi - lo;
            if (x.hi < y.hi)
                ++i;
            else
                ++j;
        }
        return m;
    }

    static Rat symmetric_difference_measure(const IntervalUnion& a, const IntervalUnion& b) {
        return a.measure() + b.measure() - 2 * intersection_measure(a, b);
    }

    friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
        return a.parts_ == b.parts_;
    }

  private:
    static bool lo_less(const Interval& a, const Interval& b) { return a.lo < b.lo; }

    std::vector<Interval> parts_;
};

}  // namespace normnum

#endif
