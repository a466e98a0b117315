#ifndef LIOUVILLE_CLI_HPP
#define LIOUVILLE_CLI_HPP

// Command-line harness: one resolved configuration per run, one JSON report
// per run, a CSV table for the sweep subcommands and a timestamp sidecar.
//
// Exit codes: 0 pass or complete, 2 computed with a negative verdict,
// 1 could not compute (bad configuration, load failure, budget overrun, ...).

#include "liouville/error.hpp"
#include "liouville/metric_volume.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liouville::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

inline constexpr const char* kBudgetVariable = "GRAPH_LIOUVILLE_BUDGET";

/// Every problem found during resolution, each prefixed by its key path.
class ConfigError : public SpecError {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct RunConfig {
    std::string subcommand;
    std::string family = "lattice";  // lattice | factorial-tree | homogeneous-tree | flat-tree | file
    std::string input;               // graph JSON for family "file"
    int dim = 3;
    int degree = 3;
    double sigma = 2.0;
    double epsilon = 0.5;
    std::optional<std::int64_t> n0;  // homogeneous tree offset; tuned when absent
    std::optional<double> delta;
    std::optional<double> K;
    double alpha = 1.0;
    double r0 = 2.0;
    std::string x0;  // empty: origin, root, or the first vertex of a file graph
    double s = 0.0;  // 0: 2 sigma / (sigma - 1)
    std::string v = "one";
    std::optional<std::string> u;
    std::vector<double> radii{8, 16, 32, 64, 128};
    std::optional<double> radius;     // region radius for scans; absent on a file graph means all vertices
    std::int64_t depth = 10'000;      // level range on tree quotients
    std::optional<double> u0;
    std::optional<std::array<double, 2>> bracket;
    double margin = 1.0;
    double tol = 1e-12;
    unsigned workers = 1;
    std::size_t budget = kDefaultVertexBudget;
    std::string out;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"build-info", "check-hypotheses", "volume-growth",
                                                "verify-supersolution", "tune", "certificate",
                                                "shoot", "max-principle"};
    return names;
}

/// Merges `file` (a config document) with `overrides` (flag values, strings
/// or JSON values); overrides win. `env_budget` is consulted when neither
/// sets "budget". Throws ConfigError listing every problem at once.
RunConfig resolve_config(const std::string& subcommand, const nlohmann::json& file, const nlohmann::json& overrides,
                         const char* env_budget = nullptr);

nlohmann::ordered_json to_json(const RunConfig& config);

struct RunResult {
    int exit_code = kExitPass;
    std::string verdict;
    nlohmann::ordered_json report;
    std::optional<std::string> csv;
};

/// Computes without touching the filesystem (except reading inputs).
RunResult execute(const RunConfig& config);

/// execute() plus report files; returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: parse, resolve, run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liouville::cli

#endif
