#pragma once

#include <span>
#include <vector>

#include "convexpos/geometry.hpp"
#include "convexpos/tangency.hpp"

namespace convexpos {

// A parabola segment tangent to two lines at given points is exactly the
// quadratic Bezier with the lines' intersection as control point; no
// polyline approximation is used anywhere in the logic.
struct ParabolaArc {
    Vec2 start;    // tangency point on one side
    Vec2 control;  // the polygon vertex between the two sides
    Vec2 end;      // tangency point on the next side

    Vec2 point(double t) const {
        double s = 1.0 - t;
        return s * s * start + 2.0 * s * t * control + t * t * end;
    }
    Vec2 derivative(double t) const {
        return 2.0 * ((1.0 - t) * (control - start) + t * (end - control));
    }
};

struct ArcClearance {
    bool contained = false;
    double min_clearance = 0.0;  // exact minimum over t in [0,1] of the signed distance
    double t_min = 0.0;
};

// Signed distance of the arc to the halfplane boundary is a quadratic in t;
// its exact minimum over [0,1] decides containment (min >= -tol).
ArcClearance arc_in_halfplane(const ParabolaArc& arc, const Halfplane& hp, double tol = 0.0);

// Closed convex chain of kappa arcs; arc j runs from the tangency point on
// side j around vertex j+1 to the tangency point on side j+1.
struct LimitShape {
    std::vector<ParabolaArc> arcs;
    std::vector<Vec2> tangency;  // p_j, one per side
    double ap = 0.0;             // affine perimeter of the chain
};

// Requires the solution of the tangency system for the same polygon.
LimitShape build_limit_shape(const Polygon& poly, const TangencySolution& sol);

// True iff every arc clears every side halfplane of `poly` at >= -tol.
bool shape_in_polygon(const LimitShape& shape, const Polygon& poly, double tol);
inline bool shape_in_polygon(const LimitShape& shape, const Polygon& poly) {
    return shape_in_polygon(shape, poly, 1e-9 * poly.diameter());
}

// Dense polyline sampling of the closed chain (for Hausdorff distances and
// figure export); `per_arc` points per arc.
std::vector<Vec2> sample_shape(const LimitShape& shape, int per_arc);

}  // namespace convexpos
