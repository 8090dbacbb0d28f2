#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "convexpos/shape_finder.hpp"

namespace convexpos {

// Constants of the asymptotic equivalent of the convex-position probability,
// computed on the tangent polygon. All fields combine into scale-invariant
// quantities, so no area normalization is required of the caller.
struct AsymptoticModel {
    int kappa_t = 0;                 // sides of the tangent polygon = |tangency set| = m
    double area = 0.0;               // area of the *original* polygon
    double area_tangent = 0.0;       // area of the tangent polygon
    double ap_star = 0.0;            // maximal affine perimeter
    std::vector<double> m_rates;     // exponential rates of the rescaled side distances
    Eigen::MatrixXd sigma_inv;       // (kappa_t - 1)^2 precision matrix of the size-vector CLT
    double d_k = 0.0;                // det(sigma_inv)
    double log_c_k = 0.0;            // log of the dimensionless constant
    double c_k = 0.0;                // exp(log_c_k)
    std::vector<double> g;           // normalized tangency weights of the tangent polygon
    double d_k_componentwise = 0.0;  // determinant of the componentwise matrix variant (diagnostic)
};

// Rates of the limiting exponential distribution of n * (side distance):
//   m_j = (cot th_{j-1} + cot th_j)/r_j (g_j + g_{j-1})
//       + (g_{j+1} + g_j)/(sin th_j r_{j+1})
//       + (g_{j-1} + g_{j-2})/(sin th_{j-1} r_{j-1})
// with cyclic indices; valid on a tangent-case polygon.
std::vector<double> mixing_rates(const Polygon& tangent_polygon, const TangencySolution& sol);

struct PrecisionMatrix {
    Eigen::MatrixXd matrix;
    double det = 0.0;
};

// Matrix of the quadratic form sum_j [x_j^2/g_j + (x_j+x_{j+1})^2/(g_j+g_{j+1})]
// restricted to the hyperplane x_kappa = -(x_1 + ... + x_{kappa-1}).
// Symmetric positive definite for g in the open simplex.
PrecisionMatrix precision_matrix(std::span<const double> g);

// Alternative componentwise tabulation of the same matrix. It disagrees
// with the quadratic form (unit square: det 1600 vs 1024, and only 1024 is
// consistent with the known square constant), so the quadratic form is
// authoritative; this variant is kept for comparison and reports surface
// both determinants.
Eigen::MatrixXd precision_matrix_componentwise(std::span<const double> g);

// log of C = (2 pi)^{-k/2} d^{-1/2} prod_j sqrt((f_j+f_{j-1})/f_j) / (m_j sin th_j r_j)
double log_normalization_constant(const Polygon& tangent_polygon, const TangencySolution& sol,
                                  std::span<const double> m_rates, double d_k);

AsymptoticModel build_asymptotic_model(const Polygon& poly);
AsymptoticModel build_asymptotic_model(const Polygon& poly, const LimitShapeReport& report);

// log P(n points uniform in the polygon are in convex position), first-order
// equivalent:  log C + 2n - n log4 + 3n log AP* - n log Area - (2n + m/2) log n.
// Entirely in log space; n may be as large as 1e9.
double log_convex_probability_asymptote(const AsymptoticModel& model, double n);

// lim n^2 P(n)^{1/n} = e^2 AP*^3 / (4 Area)  (the area-1 rescaling is implicit).
double growth_constant(const Polygon& poly);
double growth_constant(const AsymptoticModel& model);

}  // namespace convexpos
