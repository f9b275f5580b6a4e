#pragma once

#include "cantorlab/system.hpp"

namespace cantorlab {

// Measured C1 distance between two maps on a shared domain. The sampled sups
// are grid evaluations; certified_bound dominates the true sup (Bernstein
// bound for the value difference, exact quadratic range for the derivative
// difference, both per merged polynomial piece).
template <class S>
struct C1Distance {
    S sup_value_diff{};
    S sup_derivative_diff{};
    S grid_resolution{};
    S certified_bound{};
};

template <class S>
C1Distance<S> c1_distance(const PiecewiseMap<S>& f, const PiecewiseMap<S>& g, const S& resolution) {
    if (f.domain() != g.domain()) fail(Errc::DomainMismatch, "maps are defined on different domains");
    if (resolution <= S(0)) fail(Errc::InvalidArgument, "grid resolution must be positive");
    C1Distance<S> out;
    out.grid_resolution = resolution;

    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    std::size_t i = 0, j = 0;
    S cur = f.domain().lo;
    S vmax = ScalarOps<S>::zero(), dmax = ScalarOps<S>::zero(), cert = ScalarOps<S>::zero();
    while (i < fp.size() && j < gp.size()) {
        S next = std::min(fp[i].x1, gp[j].x1);
        if (next > cur) {
            // On [cur, next] both maps are single cubics; their difference is
            // the Hermite cubic through the endpoint differences.
            S r0 = piece_eval(fp[i], cur) - piece_eval(gp[j], cur);
            S r1 = piece_eval(fp[i], next) - piece_eval(gp[j], next);
            S e0 = piece_deriv(fp[i], cur) - piece_deriv(gp[j], cur);
            S e1 = piece_deriv(fp[i], next) - piece_deriv(gp[j], next);
            MapPiece<S> diff = hermite_piece(cur, next, r0, r1, e0, e1);
            cert = std::max(cert, piece_abs_value_bound(diff));
            DerivBounds<S> db = piece_deriv_bounds(diff);
            cert = std::max(cert, std::max(ScalarOps<S>::abs(db.lo), ScalarOps<S>::abs(db.hi)));

            S span = next - cur;
            long steps = 1;
            if (span > resolution) {
                double approx = ScalarOps<S>::to_double(span) / ScalarOps<S>::to_double(resolution);
                steps = approx > 64 ? 64 : static_cast<long>(approx) + 1;
            }
            for (long t = 0; t <= steps; ++t) {
                S x = cur + span * S(ScalarOps<S>::from_int(t)) / S(ScalarOps<S>::from_int(steps));
                vmax = std::max(vmax, ScalarOps<S>::abs(piece_eval(fp[i], x) - piece_eval(gp[j], x)));
                dmax = std::max(dmax, ScalarOps<S>::abs(piece_deriv(fp[i], x) - piece_deriv(gp[j], x)));
            }
            cur = next;
        }
        if (fp[i].x1 == next) ++i;
        if (j < gp.size() && gp[j].x1 == next) ++j;
    }
    out.sup_value_diff = vmax;
    out.sup_derivative_diff = dmax;
    out.certified_bound = std::max(cert, std::max(vmax, dmax));
    return out;
}

// Branch-wise C1 distance between systems sharing partition and children.
template <class S>
C1Distance<S> c1_system_distance(const CantorSystem<S>& k1, const CantorSystem<S>& k2, const S& resolution) {
    if (k1.size() != k2.size()) fail(Errc::DomainMismatch, "systems have different partition sizes");
    C1Distance<S> out;
    out.grid_resolution = resolution;
    for (int b = 0; b < k1.size(); ++b) {
        C1Distance<S> d = c1_distance(k1.branch(b), k2.branch(b), resolution);
        out.sup_value_diff = std::max(out.sup_value_diff, d.sup_value_diff);
        out.sup_derivative_diff = std::max(out.sup_derivative_diff, d.sup_derivative_diff);
        out.certified_bound = std::max(out.certified_bound, d.certified_bound);
    }
    return out;
}

}  // namespace cantorlab
