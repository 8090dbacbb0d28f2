#include "convexpos/tangency.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace convexpos {

namespace {

// residual F_j = f_j (f_j + f_{j-1}) (f_j + f_{j+1}) - R_j
void residual(std::span<const double> f, std::span<const double> rhs, std::vector<double>& out) {
    const int k = static_cast<int>(f.size());
    for (int j = 0; j < k; ++j) {
        double fm = f[(j + k - 1) % k];
        double fp = f[(j + 1) % k];
        out[j] = f[j] * (f[j] + fm) * (f[j] + fp) - rhs[j];
    }
}

double scaled_norm(std::span<const double> res, std::span<const double> rhs) {
    double worst = 0.0;
    for (std::size_t j = 0; j < res.size(); ++j)
        worst = std::max(worst, std::abs(res[j]) / rhs[j]);
    return worst;
}

// One Gauss-Seidel sweep: per coordinate, solve the monotone cubic
// t (t + a)(t + b) = R by bisection.
void fixed_point_sweep(std::vector<double>& f, std::span<const double> rhs) {
    const int k = static_cast<int>(f.size());
    for (int j = 0; j < k; ++j) {
        double a = f[(j + k - 1) % k];
        double b = f[(j + 1) % k];
        double target = rhs[j];
        double lo = 0.0;
        double hi = std::max(std::cbrt(target), f[j]) * 2.0 + a + b;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            double val = mid * (mid + a) * (mid + b);
            (val < target ? lo : hi) = mid;
        }
        f[j] = 0.5 * (lo + hi);
    }
}

}  // namespace

TangencySolution solve_tangency_system(std::span<const double> side_lengths,
                                       std::span<const double> angles,
                                       const SolveOptions& options) {
    const int k = static_cast<int>(side_lengths.size());
    if (k < 3 || angles.size() != side_lengths.size())
        fail(ErrorKind::invalid_input, "TooFewVertices", "system needs kappa >= 3");

    std::vector<double> rhs(k);
    for (int j = 0; j < k; ++j) {
        if (side_lengths[j] <= 0.0 || angles[j] <= 0.0 || angles[j] >= M_PI)
            fail(ErrorKind::invalid_input, "NonConvex", "invalid side length or angle");
        rhs[j] = side_lengths[j] * side_lengths[(j + 1) % k] * std::sin(angles[j]);
    }

    std::vector<double> f(k);
    if (options.initial) {
        f = *options.initial;
        for (double v : f)
            if (!(v > 0.0)) fail(ErrorKind::invalid_input, "NonConvex", "starting point must be positive");
    } else {
        for (int j = 0; j < k; ++j) f[j] = std::cbrt(rhs[j] / 4.0);
    }

    std::vector<double> res(k), trial(k), trial_res(k);
    residual(f, rhs, res);
    double err = scaled_norm(res, rhs);

    Eigen::MatrixXd jac(k, k);
    Eigen::VectorXd rvec(k), step(k);

    int iter = 0;
    int stalls = 0;
    bool swept = false;
    while (err > options.relative_tolerance && iter < options.max_iterations) {
        ++iter;
        // Jacobian w.r.t. u = log f; cyclic tridiagonal, solved directly.
        jac.setZero();
        for (int j = 0; j < k; ++j) {
            int jm = (j + k - 1) % k;
            int jp = (j + 1) % k;
            double sm = f[j] + f[jm];
            double sp = f[j] + f[jp];
            jac(j, j) = (sm * sp + f[j] * sp + f[j] * sm) * f[j] / rhs[j];
            jac(j, jm) = f[j] * sp * f[jm] / rhs[j];
            jac(j, jp) = f[j] * sm * f[jp] / rhs[j];
            rvec(j) = res[j] / rhs[j];
        }
        step = jac.partialPivLu().solve(-rvec);

        // backtracking on the scaled residual norm
        double alpha = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            for (int j = 0; j < k; ++j) trial[j] = f[j] * std::exp(alpha * step(j));
            residual(trial, rhs, trial_res);
            double trial_err = scaled_norm(trial_res, rhs);
            if (trial_err < err) {
                f = trial;
                res = trial_res;
                err = trial_err;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) {
            if (++stalls >= 2 && !swept) {
                // robustness fallback for near-degenerate inputs
                for (int sweep = 0; sweep < 10000 && err > options.relative_tolerance; ++sweep) {
                    fixed_point_sweep(f, rhs);
                    residual(f, rhs, res);
                    err = scaled_norm(res, rhs);
                }
                swept = true;
                stalls = 0;
            } else if (stalls >= 4) {
                break;
            }
        }
    }

    if (err > 1e-10) {
        char detail[96];
        std::snprintf(detail, sizeof detail, "tangency system residual %.2e after %d iterations",
                      err, iter);
        fail(ErrorKind::numerical, "NoConvergence", detail);
    }

    TangencySolution sol;
    sol.f = f;
    sol.iterations = iter;
    sol.w.resize(k);
    sol.g.resize(k);
    sol.triangle_area.resize(k);
    double total = std::accumulate(f.begin(), f.end(), 0.0);
    for (int j = 0; j < k; ++j) {
        int jm = (j + k - 1) % k;
        sol.w[j] = f[jm] / (f[jm] + f[j]);
        sol.g[j] = f[j] / total;
        sol.triangle_area[j] = f[j] * f[j] * f[j] / 2.0;
    }
    sol.ap_star = std::cbrt(4.0) * total;
    residual(f, rhs, res);
    for (int j = 0; j < k; ++j) sol.residual_inf = std::max(sol.residual_inf, std::abs(res[j]));
    sol.residual_rel = scaled_norm(res, rhs);
    return sol;
}

TangencySolution solve_tangency_system(const Polygon& poly, const SolveOptions& options) {
    return solve_tangency_system(poly.side_lengths(), poly.angles(), options);
}

std::vector<Vec2> tangency_points(const Polygon& poly, const TangencySolution& sol) {
    const int k = poly.size();
    std::vector<Vec2> pts(k);
    for (int j = 0; j < k; ++j)
        pts[j] = poly.vertex(j) + sol.w[j] * (poly.vertex(j + 1) - poly.vertex(j));
    return pts;
}

double affine_perimeter_of_chain(const Polygon& poly, std::span<const double> u) {
    const int k = poly.size();
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
        int jp = (j + 1) % k;
        double t = poly.side_length(j) * (1.0 - u[j]) * poly.side_length(jp) * u[jp] *
                   std::sin(poly.angle(j));
        total += std::cbrt(std::max(t, 0.0));
    }
    return std::cbrt(4.0) * total;
}

}  // namespace convexpos
