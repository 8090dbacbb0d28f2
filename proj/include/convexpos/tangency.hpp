#pragma once

#include <optional>
#include <span>
#include <vector>

#include "convexpos/geometry.hpp"

namespace convexpos {

// Solution of the cyclic cubic system
//     f_j (f_j + f_{j-1}) (f_j + f_{j+1}) = r_j r_{j+1} sin(theta_j)
// whose unique positive root parametrizes the inscribed convex curve of
// maximal affine perimeter when the curve is tangent to every side.
struct TangencySolution {
    std::vector<double> f;              // positive root, f_j = cbrt(2 T_j)
    std::vector<double> w;              // tangency fractions: d(v_j, p_j) / r_j = f_{j-1}/(f_{j-1}+f_j)
    std::vector<double> g;              // f normalized to sum 1
    std::vector<double> triangle_area;  // corner triangle areas T_j = f_j^3 / 2
    double ap_star = 0.0;               // maximal affine perimeter, 2^{2/3} sum f
    double residual_inf = 0.0;          // max_j |lhs_j - rhs_j| (absolute)
    double residual_rel = 0.0;          // max_j |lhs_j - rhs_j| / rhs_j
    int iterations = 0;
};

struct SolveOptions {
    int max_iterations = 200;
    double relative_tolerance = 1e-13;
    // optional positive starting point; default is (r_j r_{j+1} sin(theta_j)/4)^{1/3},
    // exact for regular polygons
    std::optional<std::vector<double>> initial;
};

// Damped Newton on log f (positivity is structural). Throws NoConvergence,
// which on a valid polygon would indicate a solver defect, not a property of
// the system: the positive solution exists and is unique.
TangencySolution solve_tangency_system(std::span<const double> side_lengths,
                                       std::span<const double> angles,
                                       const SolveOptions& options = {});

TangencySolution solve_tangency_system(const Polygon& poly, const SolveOptions& options = {});

// p_j = v_j + w_j (v_{j+1} - v_j), strictly inside side j.
std::vector<Vec2> tangency_points(const Polygon& poly, const TangencySolution& sol);

// Affine perimeter of the inscribed arc chain through the points at fractions
// u_j along the sides: 2^{2/3} sum_j (r_j (1-u_j) * r_{j+1} u_{j+1} * sin theta_j)^{1/3}.
// Maximal exactly at u = w, where it equals ap_star.
double affine_perimeter_of_chain(const Polygon& poly, std::span<const double> u);

}  // namespace convexpos
