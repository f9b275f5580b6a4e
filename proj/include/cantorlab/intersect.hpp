#pragma once

#include "cantorlab/refine.hpp"

namespace cantorlab {

// Verdict of a cover-based disjointness test. "empty" is sound: depth-n
// covers contain the sets, so disjoint covers prove disjoint sets.
// "candidates" is inconclusive and lists the overlapping cover pairs.
template <class S>
struct IntersectionCertificate {
    int depth = 0;
    bool empty = false;
    std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs;  // indices into the two covers
    S separation{};                                                    // min cover distance when empty
};

template <class S>
IntersectionCertificate<S> cover_intersection_lists_serial(const std::vector<Interval<S>>& a,
                                                           const std::vector<Interval<S>>& b, int depth) {
    IntersectionCertificate<S> cert;
    cert.depth = depth;
    std::size_t j0 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (j0 < b.size() && b[j0].hi < a[i].lo) ++j0;
        for (std::size_t j = j0; j < b.size() && b[j].lo <= a[i].hi; ++j)
            cert.candidate_pairs.push_back({i, j});
    }
    if (!cert.candidate_pairs.empty()) return cert;
    cert.empty = true;
    // min distance between the two covers by a merge sweep
    bool have = false;
    S best{};
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        S d = interval_gap(a[i], b[j]);
        if (!have || d < best) {
            best = d;
            have = true;
        }
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    cert.separation = have ? best : S(0);
    return cert;
}

template <class S>
IntersectionCertificate<S> cover_intersection_lists(const std::vector<Interval<S>>& a,
                                                    const std::vector<Interval<S>>& b, int depth) {
#ifdef _OPENMP
    if (a.size() >= 256) {
        IntersectionCertificate<S> cert;
        cert.depth = depth;
        int nt = omp_get_max_threads();
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> bufs(nt);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(a.size()); ++i) {
            auto& buf = bufs[omp_get_thread_num()];
            // first b with b.hi >= a[i].lo
            std::size_t lo = 0, hi = b.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (b[mid].hi < a[i].lo)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            for (std::size_t j = lo; j < b.size() && b[j].lo <= a[i].hi; ++j)
                buf.push_back({static_cast<std::size_t>(i), j});
        }
        for (auto& buf : bufs) cert.candidate_pairs.insert(cert.candidate_pairs.end(), buf.begin(), buf.end());
        std::sort(cert.candidate_pairs.begin(), cert.candidate_pairs.end());
        if (!cert.candidate_pairs.empty()) return cert;
        return cover_intersection_lists_serial(a, b, depth);  // for the separation sweep
    }
#endif
    return cover_intersection_lists_serial(a, b, depth);
}

template <class S>
std::vector<Interval<S>> cover_intervals(const CantorSystem<S>& k, int depth) {
    auto cyls = refine(k, depth);
    std::vector<Interval<S>> out;
    out.reserve(cyls.size());
    for (auto& c : cyls) out.push_back(c.iv);
    return out;
}

template <class S>
IntersectionCertificate<S> cover_intersection(const CantorSystem<S>& k1, const CantorSystem<S>& k2, int depth) {
    return cover_intersection_lists(cover_intervals(k1, depth), cover_intervals(k2, depth), depth);
}

// Outer approximation of K - K' at the given depth: the merged union of all
// pairwise differences J_i - J'_k of cover intervals.
template <class S>
struct DifferenceSet {
    int depth = 0;
    std::vector<Interval<S>> intervals;  // sorted, disjoint (touching merged)
    S resolution{};                      // Hausdorff error bound: max |J_i| + max |J'_k|
};

template <class S>
DifferenceSet<S> arithmetic_difference_lists_serial(const std::vector<Interval<S>>& a,
                                                    const std::vector<Interval<S>>& b, int depth) {
    DifferenceSet<S> d;
    d.depth = depth;
    std::vector<Interval<S>> all;
    all.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) all.push_back(Interval<S>(x.lo - y.hi, x.hi - y.lo));
    d.intervals = merge_intervals(std::move(all));
    S ma = ScalarOps<S>::zero(), mb = ScalarOps<S>::zero();
    for (const auto& x : a) ma = std::max(ma, x.length());
    for (const auto& y : b) mb = std::max(mb, y.length());
    d.resolution = ma + mb;
    return d;
}

template <class S>
DifferenceSet<S> arithmetic_difference_lists(const std::vector<Interval<S>>& a, const std::vector<Interval<S>>& b,
                                             int depth) {
#ifdef _OPENMP
    if (a.size() * b.size() >= 4096) {
        DifferenceSet<S> d;
        d.depth = depth;
        std::vector<Interval<S>> all(a.size() * b.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(a.size()); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                all[static_cast<std::size_t>(i) * b.size() + j] = Interval<S>(a[i].lo - b[j].hi, a[i].hi - b[j].lo);
        d.intervals = merge_intervals(std::move(all));
        S ma = ScalarOps<S>::zero(), mb = ScalarOps<S>::zero();
        for (const auto& x : a) ma = std::max(ma, x.length());
        for (const auto& y : b) mb = std::max(mb, y.length());
        d.resolution = ma + mb;
        return d;
    }
#endif
    return arithmetic_difference_lists_serial(a, b, depth);
}

template <class S>
DifferenceSet<S> arithmetic_difference(const CantorSystem<S>& k1, const CantorSystem<S>& k2, int depth) {
    return arithmetic_difference_lists(cover_intervals(k1, depth), cover_intervals(k2, depth), depth);
}

template <class S>
DifferenceSet<S> arithmetic_difference_serial(const CantorSystem<S>& k1, const CantorSystem<S>& k2, int depth) {
    std::vector<Interval<S>> a, b;
    for (auto& c : refine_serial(k1, depth)) a.push_back(c.iv);
    for (auto& c : refine_serial(k2, depth)) b.push_back(c.iv);
    return arithmetic_difference_lists_serial(a, b, depth);
}

// Resolution-h interior probe. has_interval means some component of length
// >= h at the base depth still holds a component >= h two depths further;
// this is persistence evidence, not a proof of interior.
template <class S>
bool interior_probe(const DifferenceSet<S>& base, const DifferenceSet<S>& deeper, const S& h) {
    if (h <= S(0)) fail(Errc::InvalidArgument, "resolution must be positive");
    for (const auto& comp : base.intervals) {
        if (comp.length() < h) continue;
        for (const auto& sub : deeper.intervals)
            if (sub.length() >= h && comp.contains(sub)) return true;
    }
    return false;
}

template <class S>
bool interior_probe(const CantorSystem<S>& k1, const CantorSystem<S>& k2, int depth, const S& h) {
    DifferenceSet<S> base = arithmetic_difference(k1, k2, depth);
    DifferenceSet<S> deeper = arithmetic_difference(k1, k2, depth + 2);
    return interior_probe(base, deeper, h);
}

// Per grid point t: verdict of cover_intersection(K, K'+t, depth).
template <class S>
std::vector<std::pair<S, bool>> translation_scan(const CantorSystem<S>& k1, const CantorSystem<S>& k2, const S& t0,
                                                 const S& t1, const S& step, int depth) {
    if (!(step > S(0)) || !(t0 < t1)) fail(Errc::InvalidArgument, "need positive step and t0 < t1");
    auto a = cover_intervals(k1, depth);
    auto b = cover_intervals(k2, depth);
    std::vector<std::pair<S, bool>> out;
    for (S t = t0; t <= t1; t += step) {
        std::vector<Interval<S>> bt;
        bt.reserve(b.size());
        for (const auto& iv : b) bt.push_back(iv.translated(t));
        auto cert = cover_intersection_lists(a, bt, depth);
        out.push_back({t, cert.empty});
    }
    return out;
}

}  // namespace cantorlab
