#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "convexpos/commands.hpp"
#include "convexpos/exact_formulas.hpp"
#include "convexpos/polygon_io.hpp"
#include "test_support.hpp"

using namespace convexpos;
using namespace convexpos::testing;

namespace {

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "convexpos_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* k_square_json = R"({"vertices": [[0,0],[1,0],[1,1],[0,1]]})";

}  // namespace

TEST_CASE("polygon json: 17-digit round trip is bit exact") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        Polygon poly = random_convex_polygon(rng, 3 + static_cast<int>(rng.below(9)));
        Polygon back = parse_polygon_json(polygon_to_json(poly));
        REQUIRE(back.size() == poly.size());
        for (int j = 0; j < poly.size(); ++j) {
            CHECK(back.vertex(j).x == poly.vertex(j).x);
            CHECK(back.vertex(j).y == poly.vertex(j).y);
        }
        CHECK(polygon_hash(back) == polygon_hash(poly));
    }
}

TEST_CASE("analyze: square report values, determinism, lossless round trip") {
    std::string polygon = write_file("square.json", k_square_json);
    AnalyzeOptions opt;
    opt.polygon_file = polygon;
    std::ostringstream out1, out2, err;
    REQUIRE(cmd_analyze(opt, out1, err) == 0);
    REQUIRE(cmd_analyze(opt, out2, err) == 0);
    CHECK(out1.str() == out2.str());  // byte-identical reruns

    nlohmann::json doc = nlohmann::json::parse(out1.str());
    CHECK(doc["search"]["ap_star"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(doc["search"]["tangency_count"].get<int>() == 4);
    CHECK(doc["asymptotics"]["c_k"].get<double>() ==
          doctest::Approx(1.0 / (32.0 * M_PI * M_PI)).epsilon(1e-10));
    CHECK(doc["asymptotics"]["d_k"].get<double>() == doctest::Approx(1024.0));
    CHECK(doc["asymptotics"]["d_k_componentwise"].get<double>() == doctest::Approx(1600.0));

    // lossless: reserialize the parsed document and parse again
    nlohmann::json reparsed = nlohmann::json::parse(doc.dump());
    CHECK(reparsed == doc);
}

TEST_CASE("analyze: svg output and error paths") {
    std::string polygon = write_file("trunc.json",
        R"({"vertices": [[0.1,0],[1,0],[1,1],[0,1],[0,0.1]]})");
    AnalyzeOptions opt;
    opt.polygon_file = polygon;
    auto svg_path = (scratch_dir() / "trunc.svg").string();
    opt.svg_file = svg_path;
    std::ostringstream out, err;
    REQUIRE(cmd_analyze(opt, out, err) == 0);
    std::string svg = slurp(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find(" Q ") != std::string::npos);  // quadratic Bezier arcs
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // tangent polygon

    nlohmann::json doc = nlohmann::json::parse(out.str());
    CHECK(doc["search"]["tangency_sides"] == nlohmann::json::array({1, 2, 3, 4}));

    AnalyzeOptions bad;
    bad.polygon_file = write_file("nonconvex.json",
        R"({"vertices": [[0,0],[2,0],[2,2],[1,0.5],[0,2]]})");
    std::ostringstream bad_out, bad_err;
    CHECK(cmd_analyze(bad, bad_out, bad_err) == 2);
    CHECK(bad_err.str().find("NonConvex") != std::string::npos);

    AnalyzeOptions missing;
    missing.polygon_file = (scratch_dir() / "missing.json").string();
    std::ostringstream m_out, m_err;
    CHECK(cmd_analyze(missing, m_out, m_err) == 2);
}

TEST_CASE("asymptotic: proxy columns approach the growth limits") {
    std::string polygon = write_file("square.json", k_square_json);
    AsymptoticOptions opt;
    opt.polygon_file = polygon;
    opt.n_values = {100, 200, 400};
    std::ostringstream out, err;
    REQUIRE(cmd_asymptotic(opt, out, err) == 0);

    std::istringstream csv(out.str());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,log_p_asymptotic,growth_proxy");
    double target = 16.0 * std::exp(2.0);
    double prev_err = 1e18;
    std::string line;
    while (std::getline(csv, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double n, log_p, proxy;
        row >> n >> log_p >> proxy;
        double error = std::abs(proxy - target);
        CHECK(error < prev_err);
        prev_err = error;
    }
    CHECK(prev_err < 0.05 * target);

    // triangle at n = 400 within 5% of its limit
    double rt = 2.0 / std::pow(3.0, 0.25);
    std::ostringstream tri_json;
    tri_json << "{\"vertices\": [[0,0],[" << rt << ",0],[" << 0.5 * rt << "," << rt * std::sqrt(3.0) / 2
             << "]]}";
    AsymptoticOptions tri_opt;
    tri_opt.polygon_file = write_file("tri.json", tri_json.str());
    tri_opt.n_values = {400};
    std::ostringstream tri_out, tri_err;
    REQUIRE(cmd_asymptotic(tri_opt, tri_out, tri_err) == 0);
    std::string tri_csv = tri_out.str();
    double proxy = std::stod(tri_csv.substr(tri_csv.rfind(',') + 1));
    CHECK(std::abs(proxy - 13.5 * std::exp(2.0)) < 0.05 * 13.5 * std::exp(2.0));
}

TEST_CASE("asymptotic: regular pentagon baseline is pinned") {
    double R = std::sqrt(2.0 / (5.0 * std::sin(2.0 * M_PI / 5)));
    std::ostringstream pj;
    pj << "{\"vertices\": [";
    for (int j = 0; j < 5; ++j) {
        if (j) pj << ",";
        pj << "[" << format_double(R * std::cos(2 * M_PI * j / 5)) << ","
           << format_double(R * std::sin(2 * M_PI * j / 5)) << "]";
    }
    pj << "]}";
    AsymptoticOptions opt;
    opt.polygon_file = write_file("pentagon.json", pj.str());
    opt.n_values = {100};
    std::ostringstream out, err;
    REQUIRE(cmd_asymptotic(opt, out, err) == 0);
    std::string line = out.str().substr(out.str().find('\n') + 1);
    double log_p = std::stod(line.substr(line.find(',') + 1));
    CHECK(log_p == doctest::Approx(-452.556487519822).epsilon(1e-9));
}

TEST_CASE("montecarlo: worker independence and a known value") {
    std::string polygon = write_file("square.json", k_square_json);
    MonteCarloOptions a;
    a.polygon_file = polygon;
    a.n = 4;
    a.trials = 200000;
    a.seed = 7;
    a.workers = 1;
    MonteCarloOptions b = a;
    b.workers = 8;
    std::ostringstream out_a, out_b, err;
    REQUIRE(cmd_montecarlo(a, out_a, err) == 0);
    REQUIRE(cmd_montecarlo(b, out_b, err) == 0);
    CHECK(out_a.str() == out_b.str());
    CHECK(out_a.str().find("convex,") != std::string::npos);

    // bipointed needs no polygon
    MonteCarloOptions bp;
    bp.estimator = "bipointed";
    bp.n = 1;
    bp.trials = 1000;
    std::ostringstream out_bp, err_bp;
    REQUIRE(cmd_montecarlo(bp, out_bp, err_bp) == 0);
    CHECK(out_bp.str().find(",1000,1000,1,") != std::string::npos);  // always convex at n=1

    MonteCarloOptions missing;
    missing.estimator = "convex";
    std::ostringstream m_out, m_err;
    CHECK(cmd_montecarlo(missing, m_out, m_err) == 2);
}

TEST_CASE("exact: rationals and large-n log values") {
    auto run = [](const std::string& shape, int n) {
        ExactOptions opt;
        opt.shape = shape;
        opt.n = n;
        std::ostringstream out, err;
        REQUIRE(cmd_exact(opt, out, err) == 0);
        std::string text = out.str();
        return text.substr(0, text.size() - 1);  // strip newline
    };
    CHECK(run("square", 4) == "25/36");
    CHECK(run("bipointed", 2) == "1/3");
    CHECK(run("bipointed", 1) == "1");

    double logged = std::stod(run("triangle", 100));
    double oracle = 0.0;
    for (auto [p, e] : reference_prime_exponents(ReferenceShape::triangle, 100))
        oracle += static_cast<double>(e) * std::log(static_cast<double>(p));
    CHECK(logged == doctest::Approx(oracle).epsilon(1e-12));

    ExactOptions bad;
    bad.shape = "disk";
    bad.n = 4;
    std::ostringstream out, err;
    CHECK(cmd_exact(bad, out, err) == 2);
}

TEST_CASE("guards map to exit code 4") {
    std::ostringstream big;
    big << "{\"vertices\": [";
    for (int j = 0; j < 25; ++j) {
        if (j) big << ",";
        big << "[" << format_double(std::cos(2 * M_PI * j / 25)) << ","
            << format_double(std::sin(2 * M_PI * j / 25)) << "]";
    }
    big << "]}";
    AnalyzeOptions opt;
    opt.polygon_file = write_file("big.json", big.str());
    std::ostringstream out, err;
    CHECK(cmd_analyze(opt, out, err) == 4);
    CHECK(err.str().find("TooLarge") != std::string::npos);
}

TEST_CASE("installed binary: end-to-end runs, env seed, exit codes") {
    std::string polygon = write_file("square.json", k_square_json);
    auto out_a = (scratch_dir() / "mc_a.csv").string();
    auto out_b = (scratch_dir() / "mc_b.csv").string();
    std::string base = std::string(CONVEXPOS_CLI_PATH) + " montecarlo " + polygon +
                       " --n 4 --trials 50000 --workers 2 -o ";
    // seed from the environment, reproducible across runs
    REQUIRE(std::system(("CONVEXPOS_SEED=9 " + base + out_a).c_str()) == 0);
    REQUIRE(std::system(("CONVEXPOS_SEED=9 " + base + out_b).c_str()) == 0);
    CHECK(slurp(out_a) == slurp(out_b));
    CHECK(slurp(out_a).find(",9\n") != std::string::npos);  // seed column

    std::string exact_cmd = std::string(CONVEXPOS_CLI_PATH) + " exact --shape square --n 4 > " +
                            (scratch_dir() / "exact.txt").string();
    REQUIRE(std::system(exact_cmd.c_str()) == 0);
    CHECK(slurp((scratch_dir() / "exact.txt").string()) == "25/36\n");

    std::string bad = std::string(CONVEXPOS_CLI_PATH) + " analyze " +
                      (scratch_dir() / "no_such_file.json").string() + " 2>/dev/null";
    int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("pcp: worked example, degenerate inputs, svg") {
    std::string polygon = write_file("square.json", k_square_json);
    std::string points = write_file("points.csv", "x,y\n0.2,0.1\n0.9,0.5\n0.4,0.8\n");
    PcpOptions opt;
    opt.polygon_file = polygon;
    opt.points_file = points;
    auto svg_path = (scratch_dir() / "pcp.svg").string();
    opt.svg_file = svg_path;
    std::ostringstream out, err;
    REQUIRE(cmd_pcp(opt, out, err) == 0);
    std::string text = out.str();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("c:", 0) == 0) {
            std::istringstream row(line.substr(2));
            double v;
            int count = 0;
            while (row >> v) {
                CHECK(v == doctest::Approx(0.7).epsilon(1e-13));
                ++count;
            }
            CHECK(count == 4);
        }
    }
    CHECK(text.find("s: 1 1 1 0") != std::string::npos);
    CHECK(slurp(svg_path).find("<svg") != std::string::npos);

    // collinear points: ell and c still reported, s omitted
    PcpOptions flat = opt;
    flat.svg_file.reset();
    flat.points_file = write_file("flat.csv", "0.2,0.2\n0.5,0.5\n0.8,0.8\n0.4,0.7\n0.1,0.6\n");
    std::ostringstream flat_out, flat_err;
    // 5 points, 2 inside the hull of the others -> not in convex position
    REQUIRE(cmd_pcp(flat, flat_out, flat_err) == 0);
    CHECK(flat_out.str().find("ell:") != std::string::npos);
    CHECK(flat_out.str().find("omitted") != std::string::npos);

    PcpOptions empty = opt;
    empty.svg_file.reset();
    empty.points_file = write_file("empty.csv", "");
    std::ostringstream e_out, e_err;
    CHECK(cmd_pcp(empty, e_out, e_err) == 2);

    PcpOptions outside = opt;
    outside.svg_file.reset();
    outside.points_file = write_file("outside.csv", "2.0,0.5\n0.5,0.5\n0.2,0.2\n");
    std::ostringstream o_out, o_err;
    CHECK(cmd_pcp(outside, o_out, o_err) == 2);
    CHECK(o_err.str().find("PointOutsidePolygon") != std::string::npos);
}
