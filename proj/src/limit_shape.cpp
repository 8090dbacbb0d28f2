#include "convexpos/limit_shape.hpp"

#include <cmath>

namespace convexpos {

ArcClearance arc_in_halfplane(const ParabolaArc& arc, const Halfplane& hp, double tol) {
    // Bernstein coefficients of the clearance quadratic q(t)
    double q0 = hp.clearance(arc.start);
    double q1 = hp.clearance(arc.control);
    double q2 = hp.clearance(arc.end);

    ArcClearance result;
    result.min_clearance = q0;
    result.t_min = 0.0;
    if (q2 < result.min_clearance) {
        result.min_clearance = q2;
        result.t_min = 1.0;
    }
    // q(t) = a t^2 + b t + q0 with a = q0 - 2 q1 + q2, b = 2 (q1 - q0)
    double a = q0 - 2.0 * q1 + q2;
    if (a > 0.0) {
        double t = (q0 - q1) / a;  // vertex of the parabola
        if (t > 0.0 && t < 1.0) {
            double v = (1.0 - t) * (1.0 - t) * q0 + 2.0 * (1.0 - t) * t * q1 + t * t * q2;
            if (v < result.min_clearance) {
                result.min_clearance = v;
                result.t_min = t;
            }
        }
    }
    result.contained = result.min_clearance >= -tol;
    return result;
}

LimitShape build_limit_shape(const Polygon& poly, const TangencySolution& sol) {
    const int k = poly.size();
    LimitShape shape;
    shape.tangency = tangency_points(poly, sol);
    shape.arcs.resize(k);
    double ap = 0.0;
    for (int j = 0; j < k; ++j) {
        int jp = (j + 1) % k;
        ParabolaArc& arc = shape.arcs[j];
        arc.start = shape.tangency[j];
        arc.control = poly.vertex(jp);
        arc.end = shape.tangency[jp];
        double area = 0.5 * std::abs(cross(arc.control - arc.start, arc.end - arc.start));
        ap += 2.0 * std::cbrt(area);
    }
    shape.ap = ap;
    return shape;
}

bool shape_in_polygon(const LimitShape& shape, const Polygon& poly, double tol) {
    for (const ParabolaArc& arc : shape.arcs)
        for (int j = 0; j < poly.size(); ++j)
            if (!arc_in_halfplane(arc, poly.side(j).halfplane(), tol).contained) return false;
    return true;
}

std::vector<Vec2> sample_shape(const LimitShape& shape, int per_arc) {
    std::vector<Vec2> pts;
    pts.reserve(shape.arcs.size() * per_arc);
    for (const ParabolaArc& arc : shape.arcs)
        for (int i = 0; i < per_arc; ++i)
            pts.push_back(arc.point(static_cast<double>(i) / per_arc));
    return pts;
}

}  // namespace convexpos
