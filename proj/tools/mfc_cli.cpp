// Batch reproduction of the benchmark scenarios.
//
//   mfc list
//   mfc run <name> [--seed N] [--out DIR] [--config FILE] [--estimator E] [--no-noise]
//   mfc run-all [--seed N] [--out DIR] [--estimator E] [--no-noise]

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mfc/catalog.hpp"
#include "mfc/errors.hpp"
#include "mfc/io.hpp"
#include "mfc/report.hpp"

namespace {

void print_report(const mfc::RunReport& r) {
    const auto m = mfc::metrics_to_json(r.metrics);
    std::cout << r.name << " (seed " << r.seed << ", constants " << r.constants_hash << ")\n"
              << "  " << m.dump() << '\n';
    for (const auto& f : r.files) std::cout << "  wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model-free control benchmark runner"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string estimator;
    bool no_noise = false;

    auto* list = app.add_subcommand("list", "List catalog scenarios");

    auto* run = app.add_subcommand("run", "Run one scenario");
    std::string name;
    std::string config;
    run->add_option("name", name, "Catalog scenario name, e.g. lin-iii/ip");
    run->add_option("--config", config, "Flat JSON config overriding a catalog entry");

    auto* run_all = app.add_subcommand("run-all", "Run every catalog scenario and compare controllers");

    for (auto* sub : {run, run_all}) {
        sub->add_option("--seed", seed, "Noise seed")->capture_default_str();
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--estimator", estimator, "F estimator for iP runs")
            ->check(CLI::IsMember({"integral", "closedloop", "oracle"}));
        sub->add_flag("--no-noise", no_noise, "Disable measurement noise");
    }

    CLI11_PARSE(app, argc, argv);

    mfc::RunOverrides overrides;
    overrides.no_noise = no_noise;
    if (!estimator.empty()) overrides.estimator = mfc::parse_estimator_kind(estimator);

    try {
        if (list->parsed()) {
            for (const auto& e : mfc::scenario_catalog()) std::cout << e.name << "\t" << e.description << '\n';
            return 0;
        }
        if (run->parsed()) {
            if (name.empty() && config.empty()) {
                std::cerr << "run: give a scenario name or --config\n";
                return 2;
            }
            mfc::Scenario scenario;
            if (!config.empty()) {
                const auto json = mfc::read_config_file(config);
                // A positional name selects the base entry; keys in the file still win.
                scenario = name.empty() ? mfc::scenario_from_config(json)
                                        : mfc::apply_config(mfc::find_scenario(name).config, json);
            } else {
                scenario = mfc::find_scenario(name).config;
            }
            mfc::apply_overrides(scenario, overrides);
            print_report(mfc::run_scenario(std::move(scenario), seed, out_dir));
            return 0;
        }
        const auto result = mfc::run_all(seed, out_dir, overrides);
        for (const auto& r : result.reports) print_report(r);
        std::cout << '\n';
        for (const auto& c : result.checks)
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.scenario << ": " << c.claim << " -> " << c.verdict
                      << '\n';
        for (const auto& f : result.failures) std::cout << "ERROR " << f << '\n';
        std::cout << "table: " << result.table.string() << '\n';
        return result.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
