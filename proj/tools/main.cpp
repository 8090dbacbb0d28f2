#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "convexpos/commands.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CONVEXPOS_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convexpos: limit shape, maximal affine perimeter and convex-position "
                 "probability asymptotics of convex polygons"};
    app.require_subcommand(1);

    convexpos::AnalyzeOptions analyze;
    auto* cmd_analyze = app.add_subcommand(
        "analyze", "Full analysis report (limit shape, tangent polygon, asymptotic constants)");
    cmd_analyze->add_option("polygon", analyze.polygon_file, "polygon JSON file")->required();
    std::string analyze_out, analyze_svg;
    cmd_analyze->add_option("-o,--output", analyze_out, "report file (default: stdout)");
    cmd_analyze->add_option("--svg", analyze_svg, "write a figure of the shapes");
    cmd_analyze->add_option("--n", analyze.n_values, "n values for the log-asymptote table")
        ->delimiter(',');

    convexpos::AsymptoticOptions asymptotic;
    auto* cmd_asym = app.add_subcommand("asymptotic", "CSV table of the log-probability asymptote");
    cmd_asym->add_option("polygon", asymptotic.polygon_file, "polygon JSON file")->required();
    std::string asym_out;
    cmd_asym->add_option("--n", asymptotic.n_values, "n values (comma separated)")
        ->delimiter(',')
        ->required();
    cmd_asym->add_option("-o,--output", asym_out, "CSV file (default: stdout)");

    convexpos::MonteCarloOptions mc;
    mc.seed = default_seed();
    auto* cmd_mc = app.add_subcommand("montecarlo", "Monte Carlo estimates, CSV output");
    std::string mc_polygon, mc_out;
    cmd_mc->add_option("polygon", mc_polygon, "polygon JSON file");
    cmd_mc->add_option("--n", mc.n, "points per trial")->required();
    cmd_mc->add_option("--trials", mc.trials, "number of trials");
    cmd_mc->add_option("--seed", mc.seed, "master seed (default: CONVEXPOS_SEED or 1)");
    cmd_mc->add_option("--workers", mc.workers, "worker threads (result is worker-independent)");
    cmd_mc->add_option("--estimator", mc.estimator, "convex | full-sided | bipointed");
    cmd_mc->add_option("-o,--output", mc_out, "CSV file (default: stdout)");

    convexpos::ExactOptions exact;
    auto* cmd_exact = app.add_subcommand("exact", "Exact reference probabilities");
    cmd_exact->add_option("--shape", exact.shape, "square | triangle | bipointed")->required();
    cmd_exact->add_option("--n", exact.n, "number of points")->required();

    convexpos::PcpOptions pcp;
    auto* cmd_pcp = app.add_subcommand("pcp", "Parallel containment polygon of a point set");
    cmd_pcp->add_option("polygon", pcp.polygon_file, "polygon JSON file")->required();
    cmd_pcp->add_option("points", pcp.points_file, "points CSV file (x,y rows)")->required();
    std::string pcp_svg;
    cmd_pcp->add_option("--svg", pcp_svg, "write a figure of the construction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    if (*cmd_analyze) {
        if (!analyze_out.empty()) analyze.output_file = analyze_out;
        if (!analyze_svg.empty()) analyze.svg_file = analyze_svg;
        return convexpos::cmd_analyze(analyze, std::cout, std::cerr);
    }
    if (*cmd_asym) {
        if (!asym_out.empty()) asymptotic.output_file = asym_out;
        return convexpos::cmd_asymptotic(asymptotic, std::cout, std::cerr);
    }
    if (*cmd_mc) {
        if (!mc_polygon.empty()) mc.polygon_file = mc_polygon;
        if (!mc_out.empty()) mc.output_file = mc_out;
        return convexpos::cmd_montecarlo(mc, std::cout, std::cerr);
    }
    if (*cmd_exact) return convexpos::cmd_exact(exact, std::cout, std::cerr);
    if (*cmd_pcp) {
        if (!pcp_svg.empty()) pcp.svg_file = pcp_svg;
        return convexpos::cmd_pcp(pcp, std::cout, std::cerr);
    }
    return 2;
}
