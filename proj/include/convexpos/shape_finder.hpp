#pragma once

#include <span>
#include <vector>

#include "convexpos/limit_shape.hpp"

namespace convexpos {

// Result of the side-subset search for the inscribed convex set of maximal
// affine perimeter. `tangent_polygon` is the unique enlargement of the input
// polygon bounded by the supporting lines of the tangent sides; the shape is
// tangent to every side of it.
struct LimitShapeReport {
    std::vector<int> winning_sides;   // 0-based side indices of the input polygon
    Polygon tangent_polygon;          // polygon bounded by the winning side lines
    std::vector<int> tangency_set;    // sides of the input whose lines support tangent_polygon
    LimitShape shape;                 // boundary of the maximizing inscribed set
    TangencySolution solution;        // solved on tangent_polygon
    double ap_star = 0.0;             // maximal affine perimeter of the input polygon
    int tangency_count = 0;           // |tangency_set|, between 3 and kappa
};

// Subsets I of the side indices, |I| >= 3, whose supporting lines (with the
// polygon's inward halfplanes) intersect in a bounded polygon with exactly
// |I| edges, each on a distinct chosen line. Always contains the full set.
std::vector<std::vector<int>> enumerate_valid_subsets(const Polygon& poly);

// The polygon bounded by the chosen side lines; contains the input. Throws
// UnboundedCandidate for subsets not produced by enumerate_valid_subsets.
Polygon build_candidate(const Polygon& poly, std::span<const int> subset);

// Side-subset search: solve the tangency system on each candidate, keep the
// candidates whose arc chain stays inside the input polygon, return the one
// of maximal affine perimeter. Ties within 1e-10 relative prefer the larger
// subset (then lexicographic order), independent of evaluation order.
LimitShapeReport find_limit_shape(const Polygon& poly);

}  // namespace convexpos
