#include "convexpos/asymptotics.hpp"

#include <cmath>

namespace convexpos {

std::vector<double> mixing_rates(const Polygon& kt, const TangencySolution& sol) {
    const int k = kt.size();
    const auto& g = sol.g;
    std::vector<double> m(k);
    for (int j = 0; j < k; ++j) {
        int jm = kt.wrap(j - 1);
        int jm2 = kt.wrap(j - 2);
        int jp = kt.wrap(j + 1);
        double cot_sum = 1.0 / std::tan(kt.angle(jm)) + 1.0 / std::tan(kt.angle(j));
        m[j] = cot_sum / kt.side_length(j) * (g[j] + g[jm]) +
               (g[jp] + g[j]) / (std::sin(kt.angle(j)) * kt.side_length(jp)) +
               (g[jm] + g[jm2]) / (std::sin(kt.angle(jm)) * kt.side_length(jm));
    }
    return m;
}

PrecisionMatrix precision_matrix(std::span<const double> g) {
    const int k = static_cast<int>(g.size());
    const int d = k - 1;
    // linear forms: x_j = e_j for j < k-1 (0-based), x_{k-1} = -(x_0+...+x_{k-2})
    auto form = [&](int j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        if (j < d)
            v(j) = 1.0;
        else
            v.setConstant(-1.0);
        return v;
    };
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd xj = form(j);
        Eigen::VectorXd sum = xj + form((j + 1) % k);
        m += xj * xj.transpose() / g[j];
        m += sum * sum.transpose() / (g[j] + g[(j + 1) % k]);
    }
    PrecisionMatrix out;
    out.det = m.partialPivLu().determinant();
    out.matrix = std::move(m);
    if (!(out.det > 0.0))
        fail(ErrorKind::numerical, "SingularMatrix", "precision matrix is not positive definite");
    return out;
}

Eigen::MatrixXd precision_matrix_componentwise(std::span<const double> g) {
    const int k = static_cast<int>(g.size());
    const int d = k - 1;
    Eigen::MatrixXd m(d, d);
    // componentwise tabulation, 1-based indices j in 1..k-1, i < j
    for (int j = 1; j <= d; ++j) {
        double v = 1.0 / g[j - 1] + 1.0 / g[k - 1] + 1.0 / (g[0] + g[k - 1]) +
                   1.0 / (g[k - 2] + g[k - 1]);
        if (j != 1) v += 1.0 / (g[j - 2] + g[j - 1]);
        if (j != k - 1) v += 1.0 / (g[j] + g[j - 1]);
        m(j - 1, j - 1) = v;
    }
    for (int i = 1; i <= d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
            double v = 1.0 / g[k - 1];
            if (j == i + 1) v += 1.0 / (g[j - 2] + g[j - 1]);
            if (i != 1) v += 1.0 / (g[k - 1] + g[0]);
            if (j != k - 1) v += 1.0 / (g[k - 2] + g[k - 1]);
            m(i - 1, j - 1) = v;
            m(j - 1, i - 1) = v;
        }
    }
    return m;
}

double log_normalization_constant(const Polygon& kt, const TangencySolution& sol,
                                  std::span<const double> m_rates, double d_k) {
    const int k = kt.size();
    double log_c = -0.5 * k * std::log(2.0 * M_PI) - 0.5 * std::log(d_k);
    for (int j = 0; j < k; ++j) {
        int jm = kt.wrap(j - 1);
        log_c += 0.5 * std::log((sol.f[j] + sol.f[jm]) / sol.f[j]);
        log_c -= std::log(m_rates[j] * std::sin(kt.angle(j)) * kt.side_length(j));
    }
    return log_c;
}

AsymptoticModel build_asymptotic_model(const Polygon& poly) {
    return build_asymptotic_model(poly, find_limit_shape(poly));
}

AsymptoticModel build_asymptotic_model(const Polygon& poly, const LimitShapeReport& report) {
    const Polygon& kt = report.tangent_polygon;
    AsymptoticModel model;
    model.kappa_t = kt.size();
    model.area = poly.area();
    model.area_tangent = kt.area();
    model.ap_star = report.ap_star;
    model.g = report.solution.g;
    model.m_rates = mixing_rates(kt, report.solution);
    PrecisionMatrix prec = precision_matrix(model.g);
    model.sigma_inv = std::move(prec.matrix);
    model.d_k = prec.det;
    model.d_k_componentwise = precision_matrix_componentwise(model.g).determinant();
    model.log_c_k = log_normalization_constant(kt, report.solution, model.m_rates, model.d_k);
    model.c_k = std::exp(model.log_c_k);
    return model;
}

double log_convex_probability_asymptote(const AsymptoticModel& model, double n) {
    if (n < 3) fail(ErrorKind::invalid_input, "InvalidArgument", "asymptote needs n >= 3");
    double m = static_cast<double>(model.kappa_t);
    return model.log_c_k + 2.0 * n - n * std::log(4.0) + 3.0 * n * std::log(model.ap_star) -
           n * std::log(model.area) - (2.0 * n + 0.5 * m) * std::log(n);
}

double growth_constant(const AsymptoticModel& model) {
    double ap3 = model.ap_star * model.ap_star * model.ap_star;
    return std::exp(2.0) * ap3 / (4.0 * model.area);
}

double growth_constant(const Polygon& poly) {
    LimitShapeReport report = find_limit_shape(poly);
    double ap3 = report.ap_star * report.ap_star * report.ap_star;
    return std::exp(2.0) * ap3 / (4.0 * poly.area());
}

}  // namespace convexpos
