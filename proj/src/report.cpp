#include "mfc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>

#include "mfc/catalog.hpp"
#include "mfc/errors.hpp"
#include "mfc/io.hpp"

namespace mfc {

namespace {

namespace fs = std::filesystem;

constexpr double kIndistinguishableRmse = 0.05;
constexpr double kVastlySuperiorRatio = 0.5;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_plot_data(const fs::path& dir, const SimTrace& trace, const std::string& title) {
    {
        auto out = open_output(dir / "control.dat");
        out << "# t u\n";
        for (std::size_t k = 0; k < trace.size(); ++k)
            out << format_double(trace.t[k]) << ' ' << format_double(trace.u[k]) << '\n';
    }
    {
        auto out = open_output(dir / "output.dat");
        out << "# t y_meas ystar y_true\n";
        for (std::size_t k = 0; k < trace.size(); ++k)
            out << format_double(trace.t[k]) << ' ' << format_double(trace.y_meas[k]) << ' '
                << format_double(trace.ystar[k]) << ' ' << format_double(trace.y_true[k]) << '\n';
    }
    auto gp = open_output(dir / "plot.gp");
    gp << "set terminal pngcairo size 1200,450\n"
       << "set output 'plot.png'\n"
       << "set multiplot layout 1,2 title '" << title << "'\n"
       << "set xlabel 'Time (s)'\n"
       << "set title '(a) Control'\n"
       << "plot 'control.dat' using 1:2 with lines notitle\n"
       << "set title '(b) Output'\n"
       << "plot 'output.dat' using 1:2 with lines title 'y', '' using 1:3 with lines title 'y*'\n"
       << "unset multiplot\n";
}

std::string cell(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? cell(*v) : "-"; }

}  // namespace

void apply_overrides(Scenario& scenario, const RunOverrides& overrides) {
    if (overrides.no_noise) scenario.noise.std = 0.0;
    if (overrides.estimator && scenario.controller == ControllerKind::IP) scenario.estimator = *overrides.estimator;
}

std::string scenario_slug(std::string_view name) {
    std::string slug(name);
    std::replace(slug.begin(), slug.end(), '/', '_');
    return slug;
}

RunReport run_scenario(Scenario scenario, std::uint64_t seed, const fs::path& out_dir) {
    scenario.noise.seed = seed;
    const SimTrace trace = run_closed_loop(scenario);

    RunReport report;
    report.name = scenario.name;
    report.seed = seed;
    report.metrics = compute_metrics(trace, scenario.metrics);
    report.constants_hash = constants_hash(scenario);

    const fs::path dir = out_dir / scenario_slug(scenario.name.empty() ? "custom" : scenario.name);
    fs::create_directories(dir);
    {
        auto out = open_output(dir / "trace.csv");
        write_trace_csv(out, trace);
    }
    {
        nlohmann::json summary = scenario_to_config(scenario);
        const nlohmann::json metrics = metrics_to_json(report.metrics);
        for (const auto& [k, v] : metrics.items()) summary[k] = v;
        summary["constants_hash"] = report.constants_hash;
        auto out = open_output(dir / "metrics.json");
        out << summary.dump(2) << '\n';
    }
    write_plot_data(dir, trace, scenario.name);
    for (const char* f : {"trace.csv", "metrics.json", "control.dat", "output.dat", "plot.gp"})
        report.files.push_back(dir / f);
    return report;
}

RunReport run_scenario(std::string_view name, std::uint64_t seed, const fs::path& out_dir,
                       const RunOverrides& overrides) {
    Scenario scenario = find_scenario(name).config;
    apply_overrides(scenario, overrides);
    return run_scenario(std::move(scenario), seed, out_dir);
}

std::vector<DominanceCheck> evaluate_dominance(const std::vector<RunReport>& reports) {
    std::map<std::string, const Metrics*> by_name;
    for (const auto& r : reports) by_name[r.name] = &r.metrics;

    std::vector<DominanceCheck> checks;
    for (const auto& group : scenario_groups()) {
        DominanceCheck c;
        c.scenario = group;
        const auto integral = by_name.find(group + "/integral");
        const auto ip = by_name.find(group + "/ip");
        const bool complete = integral != by_name.end() && ip != by_name.end();
        const Metrics* mi = complete ? integral->second : nullptr;
        const Metrics* mp = complete ? ip->second : nullptr;

        if (group == "lin-i") {
            c.claim = "iP recovers from the efficiency loss faster";
            c.passed = complete && mp->recovery_time && mi->recovery_time && *mp->recovery_time < *mi->recovery_time;
            c.verdict = c.passed ? "iP recovers faster" : "not confirmed";
        } else if (group == "lin-ii") {
            c.claim = "both controllers track, rmse < 0.05";
            c.passed = complete && mi->rmse < kIndistinguishableRmse && mp->rmse < kIndistinguishableRmse;
            c.verdict = c.passed ? "indistinguishable" : "not confirmed";
        } else if (group.starts_with("lin-")) {
            c.claim = "rmse(iP) < 0.5 rmse(integral)";
            c.passed = complete && mp->rmse < kVastlySuperiorRatio * mi->rmse;
            c.verdict = c.passed ? "iP-dominant" : "not confirmed";
        } else {
            c.claim = "rmse(iP) < rmse(integral)";
            c.passed = complete && mp->rmse < mi->rmse;
            c.verdict = c.passed ? "iP-dominant" : "not confirmed";
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

bool BatchResult::all_passed() const {
    return failures.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

BatchResult run_all(std::uint64_t seed, const fs::path& out_dir, const RunOverrides& overrides) {
    const auto& catalog = scenario_catalog();
    std::vector<std::future<RunReport>> jobs;
    jobs.reserve(catalog.size());
    for (const auto& entry : catalog)
        jobs.push_back(std::async(std::launch::async, [&entry, seed, &out_dir, &overrides] {
            return run_scenario(entry.name, seed, out_dir, overrides);
        }));

    BatchResult result;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            result.reports.push_back(jobs[i].get());
        } catch (const std::exception& e) {
            result.failures.push_back(catalog[i].name + ": " + e.what());
        }
    }
    result.checks = evaluate_dominance(result.reports);

    std::map<std::string, const DominanceCheck*> verdicts;
    for (const auto& c : result.checks) verdicts[c.scenario] = &c;

    fs::create_directories(out_dir);
    result.table = out_dir / "comparison.md";
    auto out = open_output(result.table);
    out << "| scenario | controller | rmse | max abs error | settling time | recovery time | verdict |\n"
        << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : result.reports) {
        const auto slash = r.name.find('/');
        const std::string group = r.name.substr(0, slash);
        const auto v = verdicts.find(group);
        out << "| " << group << " | " << r.name.substr(slash + 1) << " | " << cell(r.metrics.rmse) << " | "
            << cell(r.metrics.max_abs_error) << " | " << cell(r.metrics.settling_time) << " | "
            << cell(r.metrics.recovery_time) << " | " << (v != verdicts.end() ? v->second->verdict : "-") << " |\n";
    }
    for (const auto& f : result.failures) out << "\nFAILED: " << f << '\n';
    return result;
}

}  // namespace mfc
