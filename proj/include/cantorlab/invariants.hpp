#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "cantorlab/refine.hpp"

namespace cantorlab {

// max |psi'| over the partition. Exact: per-piece polynomial derivative
// ranges have rational extrema.
template <class S>
S lambda_max(const CantorSystem<S>& k) {
    S best = ScalarOps<S>::zero();
    for (int b = 0; b < k.size(); ++b) {
        DerivBounds<S> r = k.branch(b).deriv_range();
        best = std::max(best, std::max(ScalarOps<S>::abs(r.lo), ScalarOps<S>::abs(r.hi)));
    }
    return best;
}

namespace detail {

template <class S, class F>
S min_over_cylinders(const CantorSystem<S>& k, int depth_limit, F&& ratio_of, const S& init) {
    S best = init;
    std::vector<Cylinder<S>> level;
    for (int j = 0; j < k.size(); ++j) level.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d <= depth_limit; ++d) {
        if (d > 0) level = refine_level(k, level, true);
        std::vector<S> locals;
#ifdef _OPENMP
        int nt = omp_get_max_threads();
        locals.assign(nt, best);
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < static_cast<long>(level.size()); ++i) {
            S v = ratio_of(level, i);
            S& slot = locals[omp_get_thread_num()];
            if (v < slot) slot = v;
        }
        for (const S& v : locals)
            if (v < best) best = v;
#else
        for (long i = 0; i < static_cast<long>(level.size()); ++i) {
            S v = ratio_of(level, i);
            if (v < best) best = v;
        }
#endif
    }
    return best;
}

}  // namespace detail

// min over construction intervals up to the given depth of |U| / |J|, the
// proportion of the combinatorial gap inside its interval.
template <class S>
S b_parameter(const CantorSystem<S>& k, int depth) {
    S init = S(1);
    return detail::min_over_cylinders(
        k, depth,
        [&](const std::vector<Cylinder<S>>& level, long i) {
            Interval<S> u = gap_of_interval(k, level[i]);
            return S(u.length() / level[i].iv.length());
        },
        init);
}

// min over construction intervals up to the given depth of the attached-gap
// proportions. The two unbounded complement components count as infinite
// gaps, so hull-boundary intervals take their single finite neighbor.
template <class S>
S g_parameter(const CantorSystem<S>& k, int depth) {
    if (depth < 0) fail(Errc::InvalidArgument, "depth must be >= 0");
    S best;
    bool have = false;
    std::vector<Cylinder<S>> level;
    for (int j = 0; j < k.size(); ++j) level.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d <= depth; ++d) {
        if (d > 0) level = detail::refine_level(k, level, true);
        for (std::size_t i = 0; i < level.size(); ++i) {
            S len = level[i].iv.length();
            std::optional<S> attached;
            if (i > 0) attached = level[i].iv.lo - level[i - 1].iv.hi;
            if (i + 1 < level.size()) {
                S rg = level[i + 1].iv.lo - level[i].iv.hi;
                if (!attached || rg < *attached) attached = rg;
            }
            if (!attached) continue;
            S v = *attached / len;
            if (!have || v < best) {
                best = v;
                have = true;
            }
        }
    }
    if (!have) fail(Errc::InvalidArgument, "no finite attached gap found");
    return best;
}

template <class S>
S a_parameter(const CantorSystem<S>& k, int depth) {
    return std::min(b_parameter(k, depth), g_parameter(k, depth));
}

// Depth-certified thickness: every gap is charged at the first depth where it
// appears between consecutive cover intervals, with the two intervals beside
// it at that depth as bridges.
template <class S>
S thickness(const CantorSystem<S>& k, int depth) {
    if (depth < 1) fail(Errc::InvalidArgument, "thickness needs depth >= 1");
    S best;
    bool have = false;
    std::set<S> seen;  // gaps identified by their left endpoint
    std::vector<Cylinder<S>> level;
    for (int j = 0; j < k.size(); ++j) level.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d <= depth; ++d) {
        if (d > 0) level = detail::refine_level(k, level, true);
        for (std::size_t i = 0; i + 1 < level.size(); ++i) {
            S glo = level[i].iv.hi;
            if (seen.count(glo)) continue;
            seen.insert(glo);
            S gap = level[i + 1].iv.lo - level[i].iv.hi;
            S bridge = std::min(level[i].iv.length(), level[i + 1].iv.length());
            S v = bridge / gap;
            if (!have || v < best) {
                best = v;
                have = true;
            }
        }
    }
    return best;
}

namespace detail {

inline double spectral_radius(const std::vector<std::vector<double>>& m) {
    std::size_t n = m.size();
    std::vector<double> v(n, 1.0), w(n);
    double rho = 0;
    for (int it = 0; it < 500; ++it) {
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m[i][j] * v[j];
            w[i] = s;
            norm += s;
        }
        double prev = rho;
        rho = norm;  // L1 Rayleigh quotient with normalized v
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (it > 8 && std::fabs(rho - prev) < 1e-16 * (1 + rho)) break;
    }
    return rho;
}

}  // namespace detail

// Moran-Bowen dimension for affine systems: the unique d in (0,1) with
// rho(M(d)) = 1 where M(d)[j][i] = |slope_j|^{-d} on allowed transitions.
// rho is strictly decreasing in d, so bisection is safe.
template <class S>
double hausdorff_dimension_affine(const CantorSystem<S>& k, double tol = 1e-13) {
    if (!k.all_affine()) fail(Errc::NotAffine, "Moran dimension needs an all-affine system");
    int r = k.size();
    std::vector<double> lam(r);
    for (int j = 0; j < r; ++j) lam[j] = std::fabs(ScalarOps<S>::to_double(k.branch(j).pieces().front().d0));
    auto rho_at = [&](double d) {
        std::vector<std::vector<double>> m(r, std::vector<double>(r, 0.0));
        for (int j = 0; j < r; ++j) {
            double w = std::pow(lam[j], -d);
            auto [s, e] = k.children(j);
            for (int i = s; i <= e; ++i) m[j][i] = w;
        }
        return detail::spectral_radius(m);
    };
    double lo = 0.0, hi = 1.0;
    if (rho_at(1.0) >= 1.0) fail(Errc::InvalidArgument, "system is not contracting in measure");
    for (int it = 0; it < 80 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (rho_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Least-squares slope of log(count) against -log(max length) over a depth
// range; the box-counting estimate of the limit capacity.
template <class S>
double box_dimension_estimate(const CantorSystem<S>& k, int depth_from, int depth_to) {
    if (depth_to - depth_from < 1) fail(Errc::DegenerateRegression, "box dimension needs >= 2 depths");
    std::vector<double> xs, ys;
    std::vector<Cylinder<S>> level;
    for (int j = 0; j < k.size(); ++j) level.push_back(Cylinder<S>{Word{j}, k.interval(j)});
    for (int d = 0; d <= depth_to; ++d) {
        if (d > 0) level = detail::refine_level(k, level, true);
        if (d < depth_from) continue;
        S maxlen = level.front().iv.length();
        for (const auto& c : level) maxlen = std::max(maxlen, S(c.iv.length()));
        xs.push_back(-std::log(ScalarOps<S>::to_double(maxlen)));
        ys.push_back(std::log(static_cast<double>(level.size())));
    }
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) fail(Errc::DegenerateRegression, "depth range gives no length variation");
    return (n * sxy - sx * sy) / denom;
}

template <class S>
struct InvariantReport {
    S lambda{};
    S b{}, g{}, a{}, thickness_value{};
    S c{};  // 2 lambda / a
    int certified_depth = 0;
    bool selfsimilar_exact = false;  // depth scan reached a fixed point on an affine system
    std::optional<double> hausdorff;
    std::optional<double> box_estimate;
};

template <class S>
InvariantReport<S> compute_invariants(const CantorSystem<S>& k, int depth) {
    InvariantReport<S> rep;
    rep.lambda = lambda_max(k);
    rep.b = b_parameter(k, depth);
    rep.g = g_parameter(k, depth);
    rep.a = std::min(rep.b, rep.g);
    rep.thickness_value = thickness(k, std::max(1, depth));
    rep.c = S(2) * rep.lambda / rep.a;
    rep.certified_depth = depth;
    if (k.all_affine() && depth >= 1) {
        rep.selfsimilar_exact = b_parameter(k, depth - 1) == rep.b && g_parameter(k, depth - 1) == rep.g &&
                                (depth < 2 || thickness(k, depth - 1) == rep.thickness_value);
        rep.hausdorff = hausdorff_dimension_affine(k);
    }
    return rep;
}

}  // namespace cantorlab
