/**
 * @file catalog.hpp
 * @brief The fourteen pinned benchmark runs: four linear and three nonlinear
 *        scenarios, each under integral feedback and under the iP.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mfc/sim.hpp"

namespace mfc {

/// Constants shared by every catalog entry.
struct CatalogConstants {
    static constexpr double kSamplingPeriod = 0.01;
    static constexpr int kSubsteps = 10;
    static constexpr double kNoiseStd = 0.01;
    static constexpr double kIntegralGainLinear = 0.5;
    static constexpr double kIntegralGainNonlinear = 1.0;
    static constexpr double kAlpha = 1.0;
    static constexpr double kProportionalGain = 1.0;
    static constexpr double kWindow = 0.3;

    static constexpr double kFaultTime = 15.0;
    static constexpr double kFaultEfficiency = 0.5;
    static constexpr double kRecoveryBand = 0.05;

    static constexpr double kPerturbationAmplitude = 0.2;
    static constexpr double kPerturbationPeriod = 5.0;
    static constexpr double kPerturbationOnset = 25.0;

    static constexpr double kLowLevel = 1.0;
    static constexpr double kHighLevel = 2.0;
    static constexpr double kSlowStart = 20.0;
    static constexpr double kSlowDuration = 30.0;
    static constexpr double kFastStart = 10.0;
    static constexpr double kFastDuration = 0.5;
    static constexpr double kComplexRampStart = 10.0;
    static constexpr double kComplexRampEnd = 12.0;
    static constexpr double kComplexAmplitude = 0.5;
    static constexpr double kComplexPeriod = 5.0;
    static constexpr double kNonlinearSineStart = 10.0;
    static constexpr double kNonlinearSineAmplitude = 0.5;
    static constexpr double kNonlinearSinePeriod = 10.0;

    static constexpr double kLinearDuration = 30.0;
    static constexpr double kSlowDurationRun = 70.0;
    static constexpr double kNonlinearDuration = 50.0;
    static constexpr double kScoreFrom = 5.0;
    static constexpr double kSlowScoreFrom = 15.0;
    static constexpr double kDecayFrom = 0.5;
    static constexpr double kDecayTo = 3.0;
};

struct CatalogEntry {
    std::string name;         ///< "<scenario>/<controller>", e.g. "lin-iii/ip"
    std::string scenario;     ///< "lin-iii"
    std::string description;
    Scenario config;
};

/// Stable, ordered list of all 14 entries.
const std::vector<CatalogEntry>& scenario_catalog();

/// @throws ConfigError for unknown names.
const CatalogEntry& find_scenario(std::string_view name);

/// Scenario group names in catalog order: lin-i .. lin-iv, nl-i .. nl-iii.
std::vector<std::string> scenario_groups();

}  // namespace mfc
