#include "convexpos/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "convexpos/asymptotics.hpp"
#include "convexpos/exact_formulas.hpp"
#include "convexpos/monte_carlo.hpp"
#include "convexpos/polygon_io.hpp"
#include "convexpos/svg.hpp"

namespace convexpos {

namespace {

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::invalid_input: return 2;
        case ErrorKind::numerical: return 3;
        case ErrorKind::guard_exceeded: return 4;
    }
    return 3;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        fn();
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << "\n";
        return 3;
    }
}

void write_output(const std::string& text, const std::optional<std::string>& path,
                  std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) fail(ErrorKind::invalid_input, "FileNotFound", "cannot write " + *path);
    file << text;
}

nlohmann::json vec_json(Vec2 v) { return nlohmann::json::array({v.x, v.y}); }

nlohmann::json points_json(std::span<const Vec2> pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Vec2& p : pts) arr.push_back(vec_json(p));
    return arr;
}

std::vector<int> one_based(const std::vector<int>& idx) {
    std::vector<int> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[i] + 1;
    return out;
}

std::string format_csv_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

// JSON dump with 17 significant digits on every floating field (report files
// must round-trip losslessly); keys are already sorted by nlohmann.
void dump_17g(const nlohmann::json& value, std::string& out, int depth) {
    const std::string pad(2 * depth, ' ');
    const std::string pad_in(2 * (depth + 1), ' ');
    if (value.is_object()) {
        out += "{";
        bool first = true;
        for (auto it = value.begin(); it != value.end(); ++it) {
            out += first ? "\n" : ",\n";
            first = false;
            out += pad_in + nlohmann::json(it.key()).dump() + ": ";
            dump_17g(it.value(), out, depth + 1);
        }
        out += first ? "}" : "\n" + pad + "}";
    } else if (value.is_array()) {
        out += "[";
        bool first = true;
        for (const auto& elem : value) {
            out += first ? "\n" : ",\n";
            first = false;
            out += pad_in;
            dump_17g(elem, out, depth + 1);
        }
        out += first ? "]" : "\n" + pad + "]";
    } else if (value.is_number_float()) {
        out += format_double(value.get<double>());
    } else {
        out += value.dump();
    }
}

std::string dump_17g(const nlohmann::json& value) {
    std::string out;
    dump_17g(value, out, 0);
    out += "\n";
    return out;
}

void emit_csv_row(std::ostream& out, const std::string& estimator, const std::string& hash, int n,
                  const McEstimate& est) {
    out << estimator << "," << hash << "," << n << "," << est.trials << "," << est.successes << ","
        << format_csv_double(est.p_hat) << "," << format_csv_double(est.ci_low) << ","
        << format_csv_double(est.ci_high) << "," << est.seed << "\n";
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Polygon poly = canonicalize(read_polygon_json(opt.polygon_file));
        LimitShapeReport report = find_limit_shape(poly);
        AsymptoticModel model = build_asymptotic_model(poly, report);

        nlohmann::json doc;
        doc["polygon"] = {
            {"vertices", points_json(poly.vertices())},
            {"side_lengths", poly.side_lengths()},
            {"angles", poly.angles()},
            {"area", poly.area()},
            {"hash", polygon_hash_hex(poly)},
        };
        const TangencySolution& sol = report.solution;
        doc["solution"] = {
            {"f", sol.f},           {"w", sol.w},
            {"g", sol.g},           {"triangle_areas", sol.triangle_area},
            {"ap_star", sol.ap_star}, {"residual_inf", sol.residual_inf},
        };
        doc["search"] = {
            {"winning_sides", one_based(report.winning_sides)},
            {"tangency_sides", one_based(report.tangency_set)},
            {"tangency_count", report.tangency_count},
            {"tangent_polygon", points_json(report.tangent_polygon.vertices())},
            {"ap_star", report.ap_star},
        };
        nlohmann::json arcs = nlohmann::json::array();
        for (const ParabolaArc& arc : report.shape.arcs)
            arcs.push_back({{"start", vec_json(arc.start)},
                            {"control", vec_json(arc.control)},
                            {"end", vec_json(arc.end)}});
        doc["limit_shape"] = {
            {"tangency_points", points_json(report.shape.tangency)},
            {"arcs", arcs},
            {"ap", report.shape.ap},
        };
        nlohmann::json sigma = nlohmann::json::array();
        for (int i = 0; i < model.sigma_inv.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < model.sigma_inv.cols(); ++j) row.push_back(model.sigma_inv(i, j));
            sigma.push_back(row);
        }
        doc["asymptotics"] = {
            {"m_rates", model.m_rates},
            {"sigma_inv", sigma},
            {"d_k", model.d_k},
            {"d_k_componentwise", model.d_k_componentwise},
            {"c_k", model.c_k},
            {"log_c_k", model.log_c_k},
            {"growth_constant", growth_constant(model)},
        };
        nlohmann::json table = nlohmann::json::array();
        for (long long n : opt.n_values) {
            double log_p = log_convex_probability_asymptote(model, static_cast<double>(n));
            table.push_back({{"n", n},
                             {"log_p", log_p},
                             {"growth_proxy", std::exp(log_p / n + 2.0 * std::log(n))}});
        }
        doc["log_asymptote"] = table;

        write_output(dump_17g(doc), opt.output_file, out);
        if (opt.svg_file) {
            std::ofstream svg(*opt.svg_file, std::ios::binary);
            if (!svg) fail(ErrorKind::invalid_input, "FileNotFound", "cannot write " + *opt.svg_file);
            svg << analysis_svg(poly, report);
        }
    });
}

int cmd_asymptotic(const AsymptoticOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Polygon poly = canonicalize(read_polygon_json(opt.polygon_file));
        AsymptoticModel model = build_asymptotic_model(poly);
        std::ostringstream csv;
        csv << "n,log_p_asymptotic,growth_proxy\n";
        for (long long n : opt.n_values) {
            double log_p = log_convex_probability_asymptote(model, static_cast<double>(n));
            double proxy = std::exp(log_p / n + 2.0 * std::log(n));
            csv << n << "," << format_csv_double(log_p) << "," << format_csv_double(proxy) << "\n";
        }
        write_output(csv.str(), opt.output_file, out);
    });
}

int cmd_montecarlo(const MonteCarloOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        McOptions mc{opt.trials, opt.seed, opt.workers};
        std::ostringstream csv;
        csv << "estimator,polygon_hash,n,trials,successes,p_hat,ci_low,ci_high,seed\n";
        if (opt.estimator == "bipointed") {
            McEstimate est = estimate_bipointed(opt.n, mc);
            emit_csv_row(csv, "bipointed", polygon_hash_hex(bipointed_triangle()), opt.n, est);
        } else {
            if (!opt.polygon_file)
                fail(ErrorKind::invalid_input, "MissingPolygon",
                     "estimator '" + opt.estimator + "' needs a polygon file");
            Polygon poly = read_polygon_json(*opt.polygon_file);
            std::string hash = polygon_hash_hex(poly);
            if (opt.estimator == "convex") {
                emit_csv_row(csv, "convex", hash, opt.n,
                             estimate_convex_probability(poly, opt.n, mc));
            } else if (opt.estimator == "full-sided") {
                FullSidedEstimate est = estimate_full_sided(poly, opt.n, mc);
                emit_csv_row(csv, "convex", hash, opt.n, est.convex);
                emit_csv_row(csv, "full_sided", hash, opt.n, est.full_sided);
            } else {
                fail(ErrorKind::invalid_input, "UnknownEstimator", opt.estimator);
            }
        }
        write_output(csv.str(), opt.output_file, out);
    });
}

int cmd_exact(const ExactOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ReferenceShape shape;
        if (opt.shape == "square")
            shape = ReferenceShape::square;
        else if (opt.shape == "triangle")
            shape = ReferenceShape::triangle;
        else if (opt.shape == "bipointed")
            shape = ReferenceShape::bipointed;
        else
            fail(ErrorKind::invalid_input, "UnknownShape", opt.shape);
        ExactReference ref = exact_reference(shape, opt.n);
        if (ref.rational)
            out << *ref.rational << "\n";
        else
            out << format_csv_double(ref.log_value) << "\n";
    });
}

int cmd_pcp(const PcpOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Polygon poly = read_polygon_json(opt.polygon_file);
        std::vector<Vec2> points = read_points_csv(opt.points_file);
        PcpData pcp = compute_pcp(poly, points);

        auto print_row = [&](const std::string& label, std::span<const double> values) {
            out << label << ":";
            for (double v : values) out << " " << format_csv_double(v);
            out << "\n";
        };
        print_row("ell", pcp.side_distance);
        print_row("c", pcp.side_length);
        print_row("c_formula", pcp.side_length_formula);
        out << "contacts:";
        for (int idx : pcp.contact_index) out << " " << idx;
        out << "\n";
        if (pcp.size_vector) {
            out << "s:";
            for (int s : *pcp.size_vector) out << " " << s;
            out << "\n";
        } else {
            out << "s: omitted (points are not in convex position)\n";
        }
        if (opt.svg_file) {
            std::ofstream svg(*opt.svg_file, std::ios::binary);
            if (!svg) fail(ErrorKind::invalid_input, "FileNotFound", "cannot write " + *opt.svg_file);
            svg << pcp_svg(poly, points, pcp);
        }
    });
}

}  // namespace convexpos
