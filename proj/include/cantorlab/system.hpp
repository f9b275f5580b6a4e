#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/piecewise.hpp"

namespace cantorlab {

enum class BranchKind { Affine, Spline };

// Parsed, not yet validated description of one branch.
template <class S>
struct RawBranch {
    BranchKind kind = BranchKind::Affine;
    S slope{}, intercept{};
    std::vector<S> knots, values, derivs;
};

// Raw system description as read from a spec file.
template <class S>
struct RawSystem {
    std::vector<Interval<S>> partition;
    std::vector<RawBranch<S>> branches;
    std::vector<std::pair<int, int>> children;  // inclusive 0-based [first, last]
    std::optional<S> tol;
};

struct Violation {
    Errc code;
    std::string detail;
};

// Combinatorial gap data of a partition interval: the smallest m with a
// multi-interval image, the top-level gap V it exposes, and its pullback U.
template <class S>
struct GapInfo {
    int owner = -1;
    int m = 0;
    Interval<S> V;
    Interval<S> U;
};

template <class S>
class CantorSystem {
  public:
    CantorSystem(std::vector<Interval<S>> partition, std::vector<PiecewiseMap<S>> branches,
                 std::vector<std::pair<int, int>> children, S tol)
        : partition_(std::move(partition)),
          branches_(std::move(branches)),
          children_(std::move(children)),
          tol_(std::move(tol)) {
        compute_combinatorial_gaps();
    }

    int size() const { return static_cast<int>(partition_.size()); }
    const std::vector<Interval<S>>& partition() const { return partition_; }
    const Interval<S>& interval(int j) const { return partition_[j]; }
    const PiecewiseMap<S>& branch(int j) const { return branches_[j]; }
    const std::vector<PiecewiseMap<S>>& branches() const { return branches_; }
    std::pair<int, int> children(int j) const { return children_[j]; }
    const S& tol() const { return tol_; }
    Interval<S> hull() const { return Interval<S>(partition_.front().lo, partition_.back().hi); }

    bool all_affine() const {
        for (const auto& b : branches_)
            if (!b.is_affine()) return false;
        return true;
    }

    // Gap between consecutive partition intervals j and j+1.
    Interval<S> top_gap(int j) const { return Interval<S>(partition_[j].hi, partition_[j + 1].lo); }

    const GapInfo<S>& combinatorial_gap(int j) const { return gaps_[j]; }

    Interval<S> child_hull(int j) const {
        return Interval<S>(partition_[children_[j].first].lo, partition_[children_[j].second].hi);
    }

    // Same Markov data, new branch maps (used by the perturbation pipeline).
    CantorSystem with_branches(std::vector<PiecewiseMap<S>> branches) const {
        return CantorSystem(partition_, std::move(branches), children_, tol_);
    }

    CantorSystem translated(const S& t) const {
        std::vector<Interval<S>> part;
        part.reserve(partition_.size());
        for (const auto& iv : partition_) part.push_back(iv.translated(t));
        std::vector<PiecewiseMap<S>> br;
        br.reserve(branches_.size());
        for (const auto& b : branches_) br.push_back(b.translated(t));
        return CantorSystem(std::move(part), std::move(br), children_, tol_);
    }

  private:
    void compute_combinatorial_gaps() {
        int r = size();
        gaps_.resize(r);
        for (int j = 0; j < r; ++j) {
            std::vector<int> path{j};
            int cur = j;
            while (children_[cur].first == children_[cur].second) {
                cur = children_[cur].first;
                path.push_back(cur);
                if (static_cast<int>(path.size()) > r + 1)
                    fail(Errc::NonPrimitiveGraph, "single-child cycle never branches");
            }
            int s = children_[cur].first;
            Interval<S> v = top_gap(s);
            Interval<S> u = v;
            for (int idx = static_cast<int>(path.size()) - 1; idx >= 0; --idx)
                u = branches_[path[idx]].invert_interval(u, tol_);
            GapInfo<S> g;
            g.owner = j;
            g.m = static_cast<int>(path.size());
            g.V = v;
            g.U = u;
            gaps_[j] = g;
        }
    }

    std::vector<Interval<S>> partition_;
    std::vector<PiecewiseMap<S>> branches_;
    std::vector<std::pair<int, int>> children_;
    S tol_;
    std::vector<GapInfo<S>> gaps_;
};

namespace detail {

inline bool primitive(const std::vector<std::pair<int, int>>& children, int r) {
    // Wielandt: a primitive r x r boolean matrix has strictly positive power
    // by exponent (r-1)^2 + 1.
    std::vector<std::vector<bool>> a(r, std::vector<bool>(r, false));
    for (int j = 0; j < r; ++j)
        for (int i = children[j].first; i <= children[j].second; ++i) a[j][i] = true;
    std::vector<std::vector<bool>> p = a;
    int limit = (r - 1) * (r - 1) + 1;
    for (int step = 1; step <= limit; ++step) {
        bool all = true;
        for (int i = 0; i < r && all; ++i)
            for (int j = 0; j < r && all; ++j)
                if (!p[i][j]) all = false;
        if (all) return true;
        std::vector<std::vector<bool>> q(r, std::vector<bool>(r, false));
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k)
                if (p[i][k])
                    for (int j = 0; j < r; ++j)
                        if (a[k][j]) q[i][j] = true;
        p.swap(q);
    }
    return false;
}

}  // namespace detail

// Checks the raw description against the regularity conditions: disjoint
// partition, expanding branches, Markov hull consistency, primitivity.
// Returns the violations found (empty means valid).
template <class S>
std::vector<Violation> validate_description(const RawSystem<S>& raw) {
    std::vector<Violation> out;
    int r = static_cast<int>(raw.partition.size());
    if (r < 2) {
        out.push_back({Errc::InvalidArgument, "need at least 2 partition intervals"});
        return out;
    }
    if (static_cast<int>(raw.branches.size()) != r || static_cast<int>(raw.children.size()) != r) {
        out.push_back({Errc::InvalidArgument, "need one branch and one child range per interval"});
        return out;
    }
    for (int j = 0; j + 1 < r; ++j) {
        if (!(raw.partition[j].hi < raw.partition[j + 1].lo))
            out.push_back({Errc::OverlappingPartition,
                           "intervals " + std::to_string(j + 1) + " and " + std::to_string(j + 2) +
                               " are not separated by a positive gap"});
    }
    for (int j = 0; j < r; ++j) {
        auto [s, e] = raw.children[j];
        if (s < 0 || e >= r || s > e)
            out.push_back({Errc::InvalidArgument, "child range of interval " + std::to_string(j + 1) + " is malformed"});
    }
    if (!out.empty()) return out;

    S tol = raw.tol.value_or(ScalarOps<S>::default_tol());
    std::vector<PiecewiseMap<S>> branches;
    for (int j = 0; j < r; ++j) {
        const RawBranch<S>& rb = raw.branches[j];
        try {
            if (rb.kind == BranchKind::Affine) {
                branches.push_back(PiecewiseMap<S>::affine(raw.partition[j], rb.slope, rb.intercept));
            } else {
                if (rb.knots.empty() || rb.knots.front() != raw.partition[j].lo || rb.knots.back() != raw.partition[j].hi) {
                    out.push_back({Errc::DomainMismatch, "spline knots of branch " + std::to_string(j + 1) +
                                                             " do not span the partition interval"});
                    return out;
                }
                branches.push_back(PiecewiseMap<S>::hermite_spline(rb.knots, rb.values, rb.derivs));
            }
        } catch (const CantorError& e) {
            out.push_back({e.code(), std::string("branch ") + std::to_string(j + 1) + ": " + e.what()});
            return out;
        }
    }
    for (int j = 0; j < r; ++j) {
        if (!branches[j].certified_expanding())
            out.push_back({Errc::NonExpanding, "branch " + std::to_string(j + 1) + " has min |derivative| <= 1"});
    }
    for (int j = 0; j < r; ++j) {
        Interval<S> img = branches[j].image_of(raw.partition[j]);
        Interval<S> hull(raw.partition[raw.children[j].first].lo, raw.partition[raw.children[j].second].hi);
        S dev = std::max(ScalarOps<S>::abs(img.lo - hull.lo), ScalarOps<S>::abs(img.hi - hull.hi));
        if (dev > tol)
            out.push_back({Errc::HullMismatch, "image of interval " + std::to_string(j + 1) +
                                                   " does not match the hull of its child range"});
    }
    if (!detail::primitive(raw.children, r))
        out.push_back({Errc::NonPrimitiveGraph, "transition graph is not primitive"});
    return out;
}

// Validating constructor: throws the first violation.
template <class S>
CantorSystem<S> validate_system(const RawSystem<S>& raw) {
    auto violations = validate_description(raw);
    if (!violations.empty()) fail(violations.front().code, violations.front().detail);
    S tol = raw.tol.value_or(ScalarOps<S>::default_tol());
    std::vector<PiecewiseMap<S>> branches;
    for (int j = 0; j < static_cast<int>(raw.partition.size()); ++j) {
        const RawBranch<S>& rb = raw.branches[j];
        if (rb.kind == BranchKind::Affine)
            branches.push_back(PiecewiseMap<S>::affine(raw.partition[j], rb.slope, rb.intercept));
        else
            branches.push_back(PiecewiseMap<S>::hermite_spline(rb.knots, rb.values, rb.derivs));
    }
    return CantorSystem<S>(raw.partition, std::move(branches), raw.children, tol);
}

}  // namespace cantorlab
