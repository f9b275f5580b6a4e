#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cantorlab/system.hpp"

namespace cantorlab {

// Symbolic address of a construction interval. word[t] is the partition index
// the t-th iterate lands in: psi^t(x) in I_{word[t]} for t <= depth, so
// |word| = depth + 1 and the interval is the component of psi^{-depth}(I_last)
// selected by the path. Dropping the first symbol applies psi:
//   psi(cyl(w)) = cyl(w[1..]).
using Sym = int;
using Word = std::vector<Sym>;

template <class S>
struct Cylinder {
    Word word;
    Interval<S> iv;
    int depth() const { return static_cast<int>(word.size()) - 1; }
    Sym terminal() const { return word.back(); }
};

template <class S>
bool valid_word(const CantorSystem<S>& k, const Word& w) {
    if (w.empty()) return false;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t] < 0 || w[t] >= k.size()) return false;
        if (t + 1 < w.size()) {
            auto [s, e] = k.children(w[t]);
            if (w[t + 1] < s || w[t + 1] > e) return false;
        }
    }
    return true;
}

template <class S>
Cylinder<S> cylinder(const CantorSystem<S>& k, const Word& w) {
    if (!valid_word(k, w)) fail(Errc::InvalidWord, "word does not follow the transition graph");
    Interval<S> j = k.interval(w.back());
    for (int t = static_cast<int>(w.size()) - 2; t >= 0; --t)
        j = k.branch(w[t]).invert_interval(j, k.tol());
    return Cylinder<S>{w, j};
}

inline Word shifted_word(const Word& w, int i) { return Word(w.begin() + i, w.end()); }

namespace detail {

template <class S>
void sort_cylinders(std::vector<Cylinder<S>>& v) {
    std::sort(v.begin(), v.end(), [](const Cylinder<S>& a, const Cylinder<S>& b) { return a.iv.lo < b.iv.lo; });
}

template <class S>
std::vector<Cylinder<S>> refine_level(const CantorSystem<S>& k, const std::vector<Cylinder<S>>& prev, bool parallel) {
    // Components of psi^{-(d+1)} are branch preimages of depth-d components:
    // cyl(b . w) = branch_b^{-1}(cyl(w)), admissible iff w[0] in children(b).
    std::vector<Cylinder<S>> next;
    int r = k.size();
    auto expand = [&](int b, const Cylinder<S>& c, std::vector<Cylinder<S>>& out) {
        auto [s, e] = k.children(b);
        if (c.word.front() < s || c.word.front() > e) return;
        Word w;
        w.reserve(c.word.size() + 1);
        w.push_back(b);
        w.insert(w.end(), c.word.begin(), c.word.end());
        out.push_back(Cylinder<S>{std::move(w), k.branch(b).invert_interval(c.iv, k.tol())});
    };
#ifdef _OPENMP
    if (parallel && prev.size() >= 64) {
        int nt = omp_get_max_threads();
        std::vector<std::vector<Cylinder<S>>> bufs(nt);
#pragma omp parallel for schedule(static)
        for (long idx = 0; idx < static_cast<long>(prev.size()); ++idx) {
            auto& buf = bufs[omp_get_thread_num()];
            for (int b = 0; b < r; ++b) expand(b, prev[idx], buf);
        }
        for (auto& buf : bufs) next.insert(next.end(), buf.begin(), buf.end());
        sort_cylinders(next);
        return next;
    }
#endif
    (void)parallel;
    for (int b = 0; b < r; ++b)
        for (const auto& c : prev) expand(b, c, next);
    sort_cylinders(next);
    return next;
}

}  // namespace detail

// All construction intervals at the given depth, in increasing order.
template <class S>
std::vector<Cylinder<S>> refine_serial(const CantorSystem<S>& k, int depth) {
    if (depth < 0) fail(Errc::InvalidArgument, "depth must be >= 0");
    std::vector<Cylinder<S>> cur;
    for (int j = 0; j < k.size(); ++j) cur.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d < depth; ++d) cur = detail::refine_level(k, cur, false);
    return cur;
}

template <class S>
std::vector<Cylinder<S>> refine(const CantorSystem<S>& k, int depth) {
    if (depth < 0) fail(Errc::InvalidArgument, "depth must be >= 0");
    std::vector<Cylinder<S>> cur;
    for (int j = 0; j < k.size(); ++j) cur.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d < depth; ++d) cur = detail::refine_level(k, cur, true);
    return cur;
}

// Depth-(d+1) children of a construction interval, in increasing order.
template <class S>
std::vector<Cylinder<S>> children_of(const CantorSystem<S>& k, const Cylinder<S>& c) {
    std::vector<Cylinder<S>> out;
    auto [s, e] = k.children(c.terminal());
    for (int t = s; t <= e; ++t) {
        Word w = c.word;
        w.push_back(t);
        out.push_back(cylinder(k, w));
    }
    detail::sort_cylinders(out);
    return out;
}

// Forward image under n applications of the expanding map. errors when some
// step leaves the interval straddling two branch domains.
template <class S>
Interval<S> iterate_image(const CantorSystem<S>& k, Interval<S> j, int n) {
    for (int step = 0; step < n; ++step) {
        int owner = -1;
        for (int b = 0; b < k.size(); ++b)
            if (k.interval(b).contains(j)) {
                owner = b;
                break;
            }
        if (owner < 0) fail(Errc::BranchStraddle, "interval is not inside a single branch domain");
        j = k.branch(owner).image_of(j);
    }
    return j;
}

namespace detail {

// Adjacent same-depth cylinder in the given direction (+1 right, -1 left),
// found by walking up to the first non-extreme ancestor and descending the
// other side. nullopt at the hull boundary.
template <class S>
std::optional<Cylinder<S>> neighbor_cylinder(const CantorSystem<S>& k, const Cylinder<S>& c, int dir) {
    if (c.word.size() == 1) {
        int j = c.word.front() + dir;
        if (j < 0 || j >= k.size()) return std::nullopt;
        return Cylinder<S>{Word{j}, k.interval(j)};
    }
    Word pw(c.word.begin(), c.word.end() - 1);
    Cylinder<S> parent = cylinder(k, pw);
    auto sibs = children_of(k, parent);
    std::size_t pos = 0;
    while (pos < sibs.size() && sibs[pos].word != c.word) ++pos;
    if (pos >= sibs.size()) fail(Errc::InvalidWord, "cylinder not among its parent's children");
    if (dir > 0 && pos + 1 < sibs.size()) return sibs[pos + 1];
    if (dir < 0 && pos > 0) return sibs[pos - 1];
    auto up = neighbor_cylinder(k, parent, dir);
    if (!up) return std::nullopt;
    auto theirs = children_of(k, *up);
    return dir > 0 ? theirs.front() : theirs.back();
}

}  // namespace detail

// The complement components of K attached to the endpoints of a construction
// interval. nullopt marks the unbounded side at the hull boundary.
template <class S>
std::pair<std::optional<Interval<S>>, std::optional<Interval<S>>> adjacent_gaps(const CantorSystem<S>& k,
                                                                                const Cylinder<S>& c) {
    std::optional<Interval<S>> left, right;
    if (auto n = detail::neighbor_cylinder(k, c, -1)) left = Interval<S>(n->iv.hi, c.iv.lo);
    if (auto n = detail::neighbor_cylinder(k, c, +1)) right = Interval<S>(c.iv.hi, n->iv.lo);
    return {left, right};
}

// The gap U inside a construction interval with psi^depth(U) equal to the
// combinatorial gap of the terminal partition interval.
template <class S>
Interval<S> gap_of_interval(const CantorSystem<S>& k, const Cylinder<S>& c) {
    Interval<S> u = k.combinatorial_gap(c.terminal()).U;
    for (int t = static_cast<int>(c.word.size()) - 2; t >= 0; --t)
        u = k.branch(c.word[t]).invert_interval(u, k.tol());
    return u;
}

template <class S>
struct MembershipResult {
    bool inside = false;
    int depth = 0;
    // When outside: the cover-complement component containing x (hull
    // boundaries clamp to the hull).
    Interval<S> witness_gap;
};

template <class S>
MembershipResult<S> membership_in_cover(const std::vector<Cylinder<S>>& cover, const Interval<S>& hull, int depth,
                                        const S& x) {
    MembershipResult<S> res;
    res.depth = depth;
    std::size_t lo = 0, hi = cover.size();
    while (lo < hi) {  // first interval with iv.hi >= x
        std::size_t mid = (lo + hi) / 2;
        if (cover[mid].iv.hi < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < cover.size() && cover[lo].iv.lo <= x) {
        res.inside = true;
        return res;
    }
    S glo = lo == 0 ? hull.lo : cover[lo - 1].iv.hi;
    S ghi = lo == cover.size() ? hull.hi : cover[lo].iv.lo;
    if (x < glo) glo = x;
    if (x > ghi) ghi = x;
    res.witness_gap = Interval<S>(glo, ghi);
    return res;
}

template <class S>
MembershipResult<S> membership(const CantorSystem<S>& k, const S& x, int depth) {
    auto cover = refine(k, depth);
    return membership_in_cover(cover, k.hull(), depth, x);
}

template <class S>
std::vector<MembershipResult<S>> membership_batch_serial(const CantorSystem<S>& k, const std::vector<S>& xs,
                                                         int depth) {
    auto cover = refine_serial(k, depth);
    std::vector<MembershipResult<S>> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = membership_in_cover(cover, k.hull(), depth, xs[i]);
    return out;
}

template <class S>
std::vector<MembershipResult<S>> membership_batch(const CantorSystem<S>& k, const std::vector<S>& xs, int depth) {
    auto cover = refine(k, depth);
    std::vector<MembershipResult<S>> out(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < static_cast<long>(xs.size()); ++i)
        out[i] = membership_in_cover(cover, k.hull(), depth, xs[i]);
    return out;
}

// Conservative upper bound on the longest construction interval at each
// depth, from per-branch certified minimum expansion. Exact for single-slope
// affine systems.
template <class S>
S max_length_bound(const CantorSystem<S>& k, int depth) {
    int r = k.size();
    std::vector<S> mind(r);
    for (int b = 0; b < r; ++b) {
        DerivBounds<S> db = k.branch(b).deriv_range();
        mind[b] = std::min(ScalarOps<S>::abs(db.lo), ScalarOps<S>::abs(db.hi));
    }
    std::vector<S> f(r);
    for (int a = 0; a < r; ++a) f[a] = k.interval(a).length();
    for (int d = 0; d < depth; ++d) {
        std::vector<S> nf(r);
        for (int a = 0; a < r; ++a) {
            auto [s, e] = k.children(a);
            S best = f[s];
            for (int c = s + 1; c <= e; ++c) best = std::max(best, f[c]);
            nf[a] = best / mind[a];
        }
        f = nf;
    }
    S best = f[0];
    for (int a = 1; a < r; ++a) best = std::max(best, f[a]);
    return best;
}

}  // namespace cantorlab
