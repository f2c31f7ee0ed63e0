#include "mfc/io.hpp"

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mfc/catalog.hpp"
#include "mfc/errors.hpp"

namespace mfc {

namespace {

constexpr std::string_view kCsvHeader = "t,u,y_true,y_meas,ystar,e_meas";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

double parse_number(std::string_view text, const char* what) {
    const std::string s(trim(text));
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ConfigError(std::string("malformed number in ") + what + ": '" + s + "'");
    return v;
}

// "name(a,b,c)" -> name and numeric arguments.
std::pair<std::string, std::vector<double>> parse_call(std::string_view text, const char* what) {
    text = trim(text);
    const std::size_t open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw ConfigError(std::string("malformed ") + what + ": '" + std::string(text) + "'");
    std::string name(trim(text.substr(0, open)));
    std::vector<double> args;
    const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    if (!trim(inner).empty())
        for (auto part : split(inner, ',')) args.push_back(parse_number(part, what));
    return {std::move(name), std::move(args)};
}

void expect_arity(const std::string& name, const std::vector<double>& args, std::size_t n) {
    if (args.size() != n)
        throw ConfigError("'" + name + "' expects " + std::to_string(n) + " arguments, got " +
                          std::to_string(args.size()));
}

std::string join_args(std::initializer_list<double> args) {
    std::string out;
    for (double a : args) {
        if (!out.empty()) out += ',';
        out += format_double(a);
    }
    return out;
}

double as_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::string as_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json time_value(double v) { return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v); }

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    os << kCsvHeader << '\n';
    for (std::size_t k = 0; k < trace.size(); ++k) {
        os << format_double(trace.t[k]) << ',' << format_double(trace.u[k]) << ',' << format_double(trace.y_true[k])
           << ',' << format_double(trace.y_meas[k]) << ',' << format_double(trace.ystar[k]) << ','
           << format_double(trace.e_meas[k]) << '\n';
    }
}

SimTrace parse_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != kCsvHeader) throw ConfigError("trace CSV: missing or wrong header");
    SimTrace trace;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 6) throw ConfigError("trace CSV: row " + std::to_string(row) + " has wrong column count");
        const std::array cols{&trace.t, &trace.u, &trace.y_true, &trace.y_meas, &trace.ystar, &trace.e_meas};
        for (std::size_t c = 0; c < 6; ++c) cols[c]->push_back(parse_number(cells[c], "trace CSV"));
    }
    return trace;
}

std::string format_reference(const ReferenceTrajectory& ref) {
    std::string out;
    for (const auto& seg : ref.segments()) {
        if (!out.empty()) out += "; ";
        if (const auto* s = std::get_if<Setpoint>(&seg.shape))
            out += "setpoint(" + join_args({s->level}) + ")";
        else if (const auto* c = std::get_if<SmoothConnect>(&seg.shape))
            out += "connect(" + join_args({c->from_level, c->to_level, c->t0, c->t1}) + ")";
        else if (const auto* w = std::get_if<Sinusoid>(&seg.shape))
            out += "sinusoid(" + join_args({w->offset, w->amplitude, w->period, w->phase_origin}) + ")";
        out += "@" + format_double(seg.start);
    }
    return out;
}

ReferenceTrajectory parse_reference(std::string_view text) {
    std::vector<Segment> segments;
    for (auto part : split(text, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        const std::size_t at = part.rfind('@');
        if (at == std::string_view::npos) throw ConfigError("reference segment needs '@start': '" + std::string(part) + "'");
        const double start = parse_number(part.substr(at + 1), "reference start");
        auto [name, args] = parse_call(part.substr(0, at), "reference segment");
        if (name == "setpoint") {
            expect_arity(name, args, 1);
            segments.push_back({start, Setpoint{args[0]}});
        } else if (name == "connect") {
            expect_arity(name, args, 4);
            segments.push_back({start, SmoothConnect{args[0], args[1], args[2], args[3]}});
        } else if (name == "sinusoid") {
            expect_arity(name, args, 4);
            segments.push_back({start, Sinusoid{args[0], args[1], args[2], args[3]}});
        } else {
            throw ConfigError("unknown reference segment '" + name + "'");
        }
    }
    return ReferenceTrajectory(std::move(segments));
}

std::string format_perturbation(const PerturbationSpec& p) {
    if (const auto* s = std::get_if<SineOnset>(&p)) return "sine(" + join_args({s->amplitude, s->period, s->onset}) + ")";
    return "none";
}

PerturbationSpec parse_perturbation(std::string_view text) {
    if (trim(text) == "none") return NoPerturbation{};
    auto [name, args] = parse_call(text, "perturbation");
    if (name != "sine") throw ConfigError("unknown perturbation '" + name + "'");
    expect_arity(name, args, 3);
    return SineOnset{args[0], args[1], args[2]};
}

std::string format_fault(const std::optional<ActuatorFault>& f) {
    if (!f) return "none";
    return format_double(f->efficiency_before) + "->" + format_double(f->efficiency_after) + "@" +
           format_double(f->fault_time);
}

std::optional<ActuatorFault> parse_fault(std::string_view text) {
    text = trim(text);
    if (text == "none") return std::nullopt;
    const std::size_t arrow = text.find("->");
    const std::size_t at = text.rfind('@');
    if (arrow == std::string_view::npos || at == std::string_view::npos || at < arrow)
        throw ConfigError("malformed fault '" + std::string(text) + "', expected 'before->after@time'");
    return ActuatorFault{parse_number(text.substr(0, arrow), "fault"),
                         parse_number(text.substr(arrow + 2, at - arrow - 2), "fault"),
                         parse_number(text.substr(at + 1), "fault")};
}

nlohmann::json scenario_to_config(const Scenario& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["plant"] = std::string(to_string(s.plant));
    j["fault"] = format_fault(s.fault);
    j["reference"] = format_reference(s.reference);
    j["perturbation"] = format_perturbation(s.perturbation);
    j["noise_std"] = s.noise.std;
    j["seed"] = s.noise.seed;
    j["controller"] = std::string(to_string(s.controller));
    j["estimator"] = std::string(to_string(s.estimator));
    j["K_P"] = s.gains.K_P;
    j["K_I"] = s.gains.K_I;
    j["K_D"] = s.gains.K_D;
    j["k_p"] = s.gains.k_p;
    j["k_i"] = s.gains.k_i;
    j["alpha"] = s.model.alpha;
    j["nu"] = s.model.nu;
    j["tau"] = s.tau;
    j["duration"] = s.duration;
    j["h"] = s.h;
    j["substeps"] = s.substeps;
    j["score_from"] = s.metrics.score_from;
    j["band"] = s.metrics.band;
    j["event_time"] = optional_number(s.metrics.event_time);
    j["decay_from"] = optional_number(s.metrics.decay_from);
    j["decay_to"] = optional_number(s.metrics.decay_to);
    return j;
}

Scenario apply_config(Scenario s, const nlohmann::json& config) {
    if (!config.is_object()) throw ConfigError("scenario config must be a flat JSON object");
    auto optional = [](const nlohmann::json& v, const std::string& key) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        return as_number(v, key);
    };
    for (const auto& [key, v] : config.items()) {
        if (key == "base") continue;
        if (key == "name") s.name = as_string(v, key);
        else if (key == "plant") s.plant = parse_plant_kind(as_string(v, key));
        else if (key == "fault") s.fault = parse_fault(as_string(v, key));
        else if (key == "reference") s.reference = parse_reference(as_string(v, key));
        else if (key == "perturbation") s.perturbation = parse_perturbation(as_string(v, key));
        else if (key == "noise_std") s.noise.std = as_number(v, key);
        else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
            s.noise.seed = v.get<std::uint64_t>();
        }
        else if (key == "controller") s.controller = parse_controller_kind(as_string(v, key));
        else if (key == "estimator") s.estimator = parse_estimator_kind(as_string(v, key));
        else if (key == "K_P") s.gains.K_P = as_number(v, key);
        else if (key == "K_I") s.gains.K_I = as_number(v, key);
        else if (key == "K_D") s.gains.K_D = as_number(v, key);
        else if (key == "k_p") s.gains.k_p = as_number(v, key);
        else if (key == "k_i") s.gains.k_i = as_number(v, key);
        else if (key == "alpha") s.model.alpha = as_number(v, key);
        else if (key == "nu") {
            if (!v.is_number_integer()) throw ConfigError("config key 'nu' must be an integer");
            s.model.nu = v.get<int>();
        }
        else if (key == "tau") s.tau = as_number(v, key);
        else if (key == "duration") s.duration = as_number(v, key);
        else if (key == "h") s.h = as_number(v, key);
        else if (key == "substeps") {
            if (!v.is_number_integer()) throw ConfigError("config key 'substeps' must be an integer");
            s.substeps = v.get<int>();
        }
        else if (key == "score_from") s.metrics.score_from = as_number(v, key);
        else if (key == "band") s.metrics.band = as_number(v, key);
        else if (key == "event_time") s.metrics.event_time = optional(v, key);
        else if (key == "decay_from") s.metrics.decay_from = optional(v, key);
        else if (key == "decay_to") s.metrics.decay_to = optional(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return s;
}

Scenario scenario_from_config(const nlohmann::json& config) {
    if (!config.is_object()) throw ConfigError("scenario config must be a flat JSON object");
    Scenario s;
    if (auto it = config.find("base"); it != config.end()) s = find_scenario(as_string(*it, "base")).config;
    return apply_config(std::move(s), config);
}

nlohmann::json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

Scenario load_scenario_file(const std::string& path) { return scenario_from_config(read_config_file(path)); }

std::string constants_hash(const Scenario& scenario) {
    const std::string canonical = scenario_to_config(scenario).dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
    return buf;
}

nlohmann::json metrics_to_json(const Metrics& m) {
    nlohmann::json j;
    j["rmse"] = m.rmse;
    j["max_abs_error"] = m.max_abs_error;
    j["settling_time"] = time_value(m.settling_time);
    j["recovery_time"] = m.recovery_time ? time_value(*m.recovery_time) : nlohmann::json(nullptr);
    j["decay_rate"] = optional_number(m.decay_rate);
    return j;
}

}  // namespace mfc
