/**
 * @file report.hpp
 * @brief Running catalog entries to disk and comparing the two controllers.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfc/sim.hpp"

namespace mfc {

/// Command-line overrides applied on top of a pinned scenario.
struct RunOverrides {
    std::optional<EstimatorKind> estimator;  ///< only affects iP runs
    bool no_noise = false;
};

void apply_overrides(Scenario& scenario, const RunOverrides& overrides);

struct RunReport {
    std::string name;
    std::uint64_t seed = 0;
    Metrics metrics;
    std::string constants_hash;
    std::vector<std::filesystem::path> files;
};

/// Directory name for a scenario inside an output directory ("lin-i/ip" -> "lin-i_ip").
std::string scenario_slug(std::string_view name);

/**
 * @brief Run @p scenario with @p seed and write its artifacts under out_dir/<slug>/:
 *   trace.csv, metrics.json, control.dat, output.dat, plot.gp.
 */
RunReport run_scenario(Scenario scenario, std::uint64_t seed, const std::filesystem::path& out_dir);

/// Catalog lookup by name, then as above. @throws ConfigError for unknown names.
RunReport run_scenario(std::string_view name, std::uint64_t seed, const std::filesystem::path& out_dir,
                       const RunOverrides& overrides = {});

struct DominanceCheck {
    std::string scenario;
    std::string claim;
    std::string verdict;
    bool passed = false;
};

/// Qualitative comparison per scenario group. Groups with a missing run are reported as failed.
std::vector<DominanceCheck> evaluate_dominance(const std::vector<RunReport>& reports);

struct BatchResult {
    std::vector<RunReport> reports;
    std::vector<DominanceCheck> checks;
    std::vector<std::string> failures;  ///< "<name>: <error>" for runs that threw
    std::filesystem::path table;

    bool all_passed() const;
};

/// Run all catalog entries (in parallel) and write out_dir/comparison.md after joining.
BatchResult run_all(std::uint64_t seed, const std::filesystem::path& out_dir, const RunOverrides& overrides = {});

}  // namespace mfc
