#pragma once

#include <algorithm>
#include <vector>

#include "cantorlab/errors.hpp"
#include "cantorlab/scalar.hpp"

namespace cantorlab {

// Closed interval [lo, hi], lo <= hi.
template <class S>
struct Interval {
    S lo{};
    S hi{};

    Interval() = default;
    Interval(S a, S b) : lo(std::move(a)), hi(std::move(b)) {
        if (lo > hi) fail(Errc::InvalidArgument, "interval endpoints out of order");
    }

    static Interval sorted(S a, S b) {
        if (a <= b) return Interval(std::move(a), std::move(b));
        return Interval(std::move(b), std::move(a));
    }

    S length() const { return hi - lo; }
    S midpoint() const { return (lo + hi) / 2; }

    bool contains(const S& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    // Closed-interval overlap: touching endpoints count.
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool overlaps_open(const Interval& o) const { return lo < o.hi && o.lo < hi; }

    Interval translated(const S& t) const { return Interval(lo + t, hi + t); }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

// Distance between two disjoint intervals (0 when they overlap/touch).
template <class S>
S interval_gap(const Interval<S>& a, const Interval<S>& b) {
    if (a.overlaps(b)) return ScalarOps<S>::zero();
    return a.hi < b.lo ? S(b.lo - a.hi) : S(a.lo - b.hi);
}

// Merge a collection into sorted disjoint components; touching intervals fuse
// (outer-approximation convention).
template <class S>
std::vector<Interval<S>> merge_intervals(std::vector<Interval<S>> v) {
    if (v.empty()) return v;
    std::sort(v.begin(), v.end(), [](const Interval<S>& a, const Interval<S>& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval<S>> out;
    out.push_back(v.front());
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].lo <= out.back().hi) {
            if (v[i].hi > out.back().hi) out.back().hi = v[i].hi;
        } else {
            out.push_back(v[i]);
        }
    }
    return out;
}

}  // namespace cantorlab
