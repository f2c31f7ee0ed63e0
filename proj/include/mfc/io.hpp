/**
 * @file io.hpp
 * @brief Trace CSV, scenario config files and metrics summaries.
 *
 * Trace CSV: header "t,u,y_true,y_meas,ystar,e_meas", one row per sample,
 * 17 significant digits, '\n' line endings.
 *
 * Scenario config: a flat JSON object. Keys mirror the Scenario fields; an
 * optional "base" names a catalog entry to start from. Unknown keys are errors.
 * Text-valued fields use a small grammar:
 *
 *   reference    = "setpoint(1)@0; connect(1,2,10,12)@10; sinusoid(2,0.5,5,12)@12"
 *   perturbation = "none" | "sine(0.2,5,25)"
 *   fault        = "none" | "1->0.5@15"
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mfc/sim.hpp"

namespace mfc {

void write_trace_csv(std::ostream& os, const SimTrace& trace);

/// Reads the six exported columns back; f_used/f_monitor are left empty.
/// @throws ConfigError on a malformed header or row.
SimTrace parse_trace_csv(std::istream& is);

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

std::string format_reference(const ReferenceTrajectory& ref);
ReferenceTrajectory parse_reference(std::string_view text);
std::string format_perturbation(const PerturbationSpec& p);
PerturbationSpec parse_perturbation(std::string_view text);
std::string format_fault(const std::optional<ActuatorFault>& f);
std::optional<ActuatorFault> parse_fault(std::string_view text);

/// Flat JSON object describing every constant of a scenario.
nlohmann::json scenario_to_config(const Scenario& scenario);

/// Apply the keys of a flat config object on top of @p scenario.
/// @throws ConfigError on unknown keys, wrong value types or malformed text fields.
Scenario apply_config(Scenario scenario, const nlohmann::json& config);

/// Resolve "base" (if any) from the catalog, then apply the remaining keys.
Scenario scenario_from_config(const nlohmann::json& config);

/// Parse a config file into JSON. @throws ConfigError on I/O or parse errors.
nlohmann::json read_config_file(const std::string& path);

/// Load a config file (see scenario_from_config). @throws ConfigError on I/O or parse errors.
Scenario load_scenario_file(const std::string& path);

/// FNV-1a (64-bit) of the canonical config dump, as 16 hex digits.
std::string constants_hash(const Scenario& scenario);

/// Flat metrics object; infinite times are written as the string "inf", missing values as null.
nlohmann::json metrics_to_json(const Metrics& metrics);

}  // namespace mfc
