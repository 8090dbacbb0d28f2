#pragma once

#include <optional>
#include <string>

#include "convexpos/monte_carlo.hpp"
#include "convexpos/shape_finder.hpp"

namespace convexpos {

// Figure of the polygon (solid), the tangent polygon (dashed), the tangency
// points, and the limit-shape arc chain as native quadratic Bezier paths.
// The viewport auto-fits the tangent polygon with a 5% margin.
std::string analysis_svg(const Polygon& poly, const LimitShapeReport& report);

// Figure of the polygon, its parallel containment polygon for the given
// points, and the contact points.
std::string pcp_svg(const Polygon& poly, std::span<const Vec2> points, const PcpData& pcp);

}  // namespace convexpos
