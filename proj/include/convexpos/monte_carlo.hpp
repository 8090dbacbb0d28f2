#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "convexpos/asymptotics.hpp"
#include "convexpos/geometry.hpp"

namespace convexpos {

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

// Wilson score interval at z standard normal quantiles.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);
McEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);

struct McOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
};

// Trials are split into fixed blocks with seeds derived from (seed, block);
// workers only add parallelism, so totals are identical for any worker count.
McEstimate estimate_convex_probability(const Polygon& poly, int n, const McOptions& opt);

// n points in an area-1 triangle, convex position together with two fixed
// triangle vertices.
McEstimate estimate_bipointed(int n, const McOptions& opt);
const Polygon& bipointed_triangle();

struct FullSidedEstimate {
    McEstimate convex;        // convex position
    McEstimate full_sided;    // convex position and all PCP side lengths > 0
    double conditional_fraction = 0.0;
};
FullSidedEstimate estimate_full_sided(const Polygon& poly, int n, const McOptions& opt);

// Minimal polygon with sides parallel to the input that contains the points
// ("parallel containment polygon"): side distances ell_j, side lengths c_j,
// its vertices, contact points, and the size-vector s when the points are in
// convex position.
struct PcpData {
    std::vector<double> side_distance;        // ell_j = min distance to side-j line
    std::vector<double> side_length;          // c_j, read off the offset-line construction
    std::vector<double> side_length_formula;  // c_j = r_j - cl~_j(ell), for cross-checking
    std::vector<int> contact_index;           // per side, index into the input points
    std::vector<Vec2> corners;                // intersection of offset lines j and j+1
    std::optional<std::vector<int>> size_vector;  // hull steps between consecutive contacts
};

PcpData compute_pcp(const Polygon& poly, std::span<const Vec2> points);

// c_j = r_j - ell_{j-1}/sin th_{j-1} - ell_{j+1}/sin th_j - ell_j (cot th_{j-1} + cot th_j)
std::vector<double> pcp_side_lengths_formula(const Polygon& poly, std::span<const double> ell);

bool is_valid_size_vector(std::span<const int> s, int n);

// Side j is shared by corners j-1 and j, so its length carries the exponent
// s_{j-1}+s_j-1; the shifted pairing (s_j+s_{j+1}-1) is kept for diagnosis
// only (it fails the closed-form cross-checks on asymmetric polygons).
enum class DensityExponent { standard, shifted };

// Unnormalized joint density of (ell, s) for points conditioned to be in
// convex position with full-sided PCP:
//   n! prod_j sin(th_j)^{s_j - 1} c_j^{e_j} / (s_j! e_j!)   on the feasible set,
// 0 outside (any c_j < 0). Computed in log space. Integrating over ell and
// summing over size-vectors yields the full-sided probability itself.
double joint_density_unnormalized(const Polygon& poly, std::span<const double> ell,
                                  std::span<const int> s, int n,
                                  DensityExponent exponent = DensityExponent::standard);

struct QuadratureOptions {
    int grid = 0;  // cells per axis of the fine grid; 0 picks a default by kappa
    DensityExponent exponent = DensityExponent::standard;
};

// Tensor-grid midpoint quadrature of the joint density over the feasible box,
// with exact boundary-cell volume fractions and Richardson extrapolation.
// Guards: kappa <= 4, n <= 8.
double full_sided_probability_quadrature(const Polygon& poly, int n,
                                         const QuadratureOptions& opt = {});

// Limiting joint density of (n * side distances, centered size-vector):
//   prod_j m_j exp(-m_j lbar_j) * sqrt(d_K / (2 pi)^{k-1}) exp(-x' Sigma^{-1} x / 2)
double limit_density(const AsymptoticModel& model, std::span<const double> ell_bar,
                     std::span<const double> x);

// Symmetric Hausdorff distance between the convex hull of the points and the
// limit-shape region of the polygon, via dense arc sampling.
double hausdorff_to_limit_shape(const Polygon& poly, std::span<const Vec2> points);
double hausdorff_hull_to_shape(std::span<const Vec2> hull_ccw, std::span<const Vec2> shape_ccw);

// Uniform n-tuples conditioned on convex position, by rejection (n <= 12).
// Sample i is drawn from its own derived stream, so the result does not
// depend on the worker count.
std::vector<std::vector<Vec2>> conditioned_convex_samples(const Polygon& poly, int n, int count,
                                                          std::uint64_t seed, int workers);

}  // namespace convexpos
