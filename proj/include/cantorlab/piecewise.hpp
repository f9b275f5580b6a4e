#pragma once

#include <optional>
#include <vector>

#include "cantorlab/interval.hpp"

namespace cantorlab {

// One polynomial piece of a branch map, stored in Hermite endpoint form:
// values y0, y1 and derivatives d0, d1 at the span ends. A cubic is uniquely
// determined by this data; the affine flag marks pieces where the map is the
// straight chord (d0 == d1 == chord slope).
template <class S>
struct MapPiece {
    S x0{}, x1{};
    S y0{}, y1{};
    S d0{}, d1{};
    bool affine = false;

    S span() const { return x1 - x0; }
    S chord() const { return (y1 - y0) / (x1 - x0); }
};

template <class S>
MapPiece<S> affine_piece(const S& x0, const S& x1, const S& slope, const S& intercept) {
    MapPiece<S> p;
    p.x0 = x0;
    p.x1 = x1;
    p.y0 = slope * x0 + intercept;
    p.y1 = slope * x1 + intercept;
    p.d0 = slope;
    p.d1 = slope;
    p.affine = true;
    return p;
}

template <class S>
MapPiece<S> hermite_piece(const S& x0, const S& x1, const S& y0, const S& y1, const S& d0, const S& d1) {
    MapPiece<S> p;
    p.x0 = x0;
    p.x1 = x1;
    p.y0 = y0;
    p.y1 = y1;
    p.d0 = d0;
    p.d1 = d1;
    S chord = (y1 - y0) / (x1 - x0);
    p.affine = (d0 == chord && d1 == chord);
    return p;
}

// Monomial coefficients in the local variable t = (x - x0)/h of p(t):
// p = c0 + c1 t + c2 t^2 + c3 t^3.
template <class S>
void piece_monomial(const MapPiece<S>& p, S& c0, S& c1, S& c2, S& c3) {
    S h = p.span();
    c0 = p.y0;
    c1 = h * p.d0;
    c2 = S(-3) * p.y0 - S(2) * h * p.d0 + S(3) * p.y1 - h * p.d1;
    c3 = S(2) * p.y0 + h * p.d0 - S(2) * p.y1 + h * p.d1;
}

template <class S>
S piece_eval(const MapPiece<S>& p, const S& x) {
    if (p.affine) return p.y0 + p.d0 * (x - p.x0);
    S c0, c1, c2, c3;
    piece_monomial(p, c0, c1, c2, c3);
    S t = (x - p.x0) / p.span();
    return ((c3 * t + c2) * t + c1) * t + c0;
}

template <class S>
S piece_deriv(const MapPiece<S>& p, const S& x) {
    if (p.affine) return p.d0;
    S c0, c1, c2, c3;
    piece_monomial(p, c0, c1, c2, c3);
    S t = (x - p.x0) / p.span();
    return ((S(3) * c3 * t + S(2) * c2) * t + c1) / p.span();
}

template <class S>
struct DerivBounds {
    S lo{}, hi{};  // exact range of p' over the span
};

// Exact derivative range: p' is a quadratic in t, so the extrema are the
// endpoints plus (possibly) the interior vertex.
template <class S>
DerivBounds<S> piece_deriv_bounds(const MapPiece<S>& p) {
    if (p.affine) return {p.d0, p.d0};
    S c0, c1, c2, c3;
    piece_monomial(p, c0, c1, c2, c3);
    S h = p.span();
    S q0 = c1;                          // dp/dt at t=0
    S q1 = c1 + S(2) * c2 + S(3) * c3;  // at t=1
    S lo = std::min(q0, q1), hi = std::max(q0, q1);
    if (c3 != S(0)) {
        S tv = -c2 / (S(3) * c3);  // vertex of the quadratic dp/dt
        if (tv > S(0) && tv < S(1)) {
            S qv = (S(3) * c3 * tv + S(2) * c2) * tv + c1;
            lo = std::min(lo, qv);
            hi = std::max(hi, qv);
        }
    }
    return {lo / h, hi / h};
}

// Upper bound on max |p| over the span via Bernstein/Bezier control values.
template <class S>
S piece_abs_value_bound(const MapPiece<S>& p) {
    S h = p.span();
    S b0 = p.y0;
    S b1 = p.y0 + h * p.d0 / S(3);
    S b2 = p.y1 - h * p.d1 / S(3);
    S b3 = p.y1;
    S m = ScalarOps<S>::abs(b0);
    m = std::max(m, ScalarOps<S>::abs(b1));
    m = std::max(m, ScalarOps<S>::abs(b2));
    m = std::max(m, ScalarOps<S>::abs(b3));
    return m;
}

// Monotone piecewise-polynomial map on a closed domain. Pieces tile the
// domain contiguously; all pieces share the sign of the derivative.
template <class S>
class PiecewiseMap {
  public:
    PiecewiseMap() = default;
    explicit PiecewiseMap(std::vector<MapPiece<S>> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty()) fail(Errc::InvalidArgument, "piecewise map needs at least one piece");
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
            if (pieces_[i].x1 != pieces_[i + 1].x0) fail(Errc::InvalidArgument, "pieces not contiguous");
            if (pieces_[i].y1 != pieces_[i + 1].y0) fail(Errc::InvalidArgument, "pieces not continuous");
        }
        orientation_ = pieces_.front().y1 > pieces_.front().y0 ? 1 : -1;
    }

    static PiecewiseMap affine(const Interval<S>& dom, const S& slope, const S& intercept) {
        return PiecewiseMap({affine_piece(dom.lo, dom.hi, slope, intercept)});
    }

    static PiecewiseMap hermite_spline(const std::vector<S>& knots, const std::vector<S>& values,
                                       const std::vector<S>& derivs) {
        if (knots.size() < 2 || knots.size() != values.size() || knots.size() != derivs.size())
            fail(Errc::InvalidArgument, "spline needs matching knots/values/derivs, >= 2 knots");
        std::vector<MapPiece<S>> ps;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            if (!(knots[i] < knots[i + 1])) fail(Errc::InvalidArgument, "spline knots not increasing");
            ps.push_back(hermite_piece(knots[i], knots[i + 1], values[i], values[i + 1], derivs[i], derivs[i + 1]));
        }
        return PiecewiseMap(std::move(ps));
    }

    const std::vector<MapPiece<S>>& pieces() const { return pieces_; }
    int orientation() const { return orientation_; }
    Interval<S> domain() const { return Interval<S>(pieces_.front().x0, pieces_.back().x1); }
    Interval<S> image() const {
        return Interval<S>::sorted(pieces_.front().y0, pieces_.back().y1);
    }

    const MapPiece<S>& piece_at(const S& x) const {
        const MapPiece<S>& p = pieces_[locate(x)];
        return p;
    }

    S eval(const S& x) const {
        if (x < domain().lo || x > domain().hi) fail(Errc::DomainMismatch, "evaluation outside branch domain");
        return piece_eval(pieces_[locate(x)], x);
    }

    S deriv(const S& x) const {
        if (x < domain().lo || x > domain().hi) fail(Errc::DomainMismatch, "evaluation outside branch domain");
        return piece_deriv(pieces_[locate(x)], x);
    }

    Interval<S> image_of(const Interval<S>& j) const {
        return Interval<S>::sorted(eval(j.lo), eval(j.hi));
    }

    // Monotone inverse. Exact when the preimage lies on an affine piece; in
    // floating mode cubic pieces are inverted by bisection + Newton.
    S invert(const S& y, const S& tol) const {
        Interval<S> img = image();
        if (y < img.lo || y > img.hi) fail(Errc::DomainMismatch, "inverse target outside image");
        std::size_t lo = 0, hi = pieces_.size() - 1;
        while (lo < hi) {  // binary search by image endpoint, orientation-aware
            std::size_t mid = (lo + hi) / 2;
            const MapPiece<S>& p = pieces_[mid];
            bool below = orientation_ > 0 ? (p.y1 < y) : (p.y1 > y);
            if (below)
                lo = mid + 1;
            else
                hi = mid;
        }
        return invert_in_piece(pieces_[lo], y, tol);
    }

    Interval<S> invert_interval(const Interval<S>& j, const S& tol) const {
        return Interval<S>::sorted(invert(j.lo, tol), invert(j.hi, tol));
    }

    // Exact range of the derivative over the whole domain.
    DerivBounds<S> deriv_range() const {
        DerivBounds<S> r = piece_deriv_bounds(pieces_.front());
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            DerivBounds<S> b = piece_deriv_bounds(pieces_[i]);
            r.lo = std::min(r.lo, b.lo);
            r.hi = std::max(r.hi, b.hi);
        }
        return r;
    }

    // Strict monotonicity with |derivative| > 1 everywhere, certified from
    // the exact piecewise-polynomial derivative range.
    bool certified_expanding() const {
        DerivBounds<S> r = deriv_range();
        if (orientation_ > 0) return r.lo > S(1);
        return r.hi < S(-1);
    }

    PiecewiseMap translated(const S& t) const {  // conjugation by x -> x + t
        std::vector<MapPiece<S>> ps = pieces_;
        for (auto& p : ps) {
            p.x0 += t;
            p.x1 += t;
            p.y0 += t;
            p.y1 += t;
        }
        return PiecewiseMap(std::move(ps));
    }

    bool is_affine() const {
        for (const auto& p : pieces_)
            if (!p.affine) return false;
        if (pieces_.size() == 1) return true;
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (pieces_[i].d0 != pieces_[0].d0) return false;
        return true;
    }

  private:
    std::size_t locate(const S& x) const {
        std::size_t lo = 0, hi = pieces_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pieces_[mid].x1 < x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    S invert_in_piece(const MapPiece<S>& p, const S& y, const S& tol) const {
        if (y == p.y0) return p.x0;
        if (y == p.y1) return p.x1;
        if (p.affine) return p.x0 + (y - p.y0) / p.d0;
        if constexpr (ScalarOps<S>::exact) {
            // Construction geometry never lands strictly inside a blend;
            // reaching this means the caller asked for a gap-interior point.
            fail(Errc::ToleranceNotMet, "exact inverse through a cubic piece is not available");
        } else {
            S a = p.x0, b = p.x1;
            int sgn = orientation_;
            for (int it = 0; it < 200; ++it) {
                S mid = (a + b) / 2;
                S v = piece_eval(p, mid);
                if ((v < y) == (sgn > 0))
                    a = mid;
                else
                    b = mid;
                if (b - a <= tol) break;
            }
            // Newton polish inside the bracket.
            S x = (a + b) / 2;
            for (int it = 0; it < 4; ++it) {
                S d = piece_deriv(p, x);
                if (d == S(0)) break;
                S nx = x - (piece_eval(p, x) - y) / d;
                if (nx < a || nx > b) break;
                x = nx;
            }
            if (b - a > tol * 16 + tol) fail(Errc::ToleranceNotMet, "cubic inverse bisection did not converge");
            return x;
        }
    }

    std::vector<MapPiece<S>> pieces_;
    int orientation_ = 1;
};

}  // namespace cantorlab
