#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convexpos {

// Command implementations behind the CLI; they return process exit codes
// (0 ok, 2 input error, 3 numerical failure, 4 guard exceeded) and write
// only to the given streams, which keeps them deterministic and testable.

struct AnalyzeOptions {
    std::string polygon_file;
    std::optional<std::string> output_file;  // default: stdout
    std::optional<std::string> svg_file;
    std::vector<long long> n_values = {10, 100, 1000, 10000};
};
int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);

struct AsymptoticOptions {
    std::string polygon_file;
    std::vector<long long> n_values;
    std::optional<std::string> output_file;
};
int cmd_asymptotic(const AsymptoticOptions& opt, std::ostream& out, std::ostream& err);

struct MonteCarloOptions {
    std::optional<std::string> polygon_file;  // not needed for the bipointed estimator
    std::string estimator = "convex";         // convex | full-sided | bipointed
    int n = 4;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::optional<std::string> output_file;
};
int cmd_montecarlo(const MonteCarloOptions& opt, std::ostream& out, std::ostream& err);

struct ExactOptions {
    std::string shape;  // square | triangle | bipointed
    int n = 4;
};
int cmd_exact(const ExactOptions& opt, std::ostream& out, std::ostream& err);

struct PcpOptions {
    std::string polygon_file;
    std::string points_file;
    std::optional<std::string> svg_file;
};
int cmd_pcp(const PcpOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace convexpos
