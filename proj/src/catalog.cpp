#include "mfc/catalog.hpp"

#include <algorithm>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

using K = CatalogConstants;

ReferenceTrajectory setpoint() { return ReferenceTrajectory::constant(K::kLowLevel); }

ReferenceTrajectory connection(double start, double length) {
    return ReferenceTrajectory({
        {0.0, Setpoint{K::kLowLevel}},
        {start, SmoothConnect{K::kLowLevel, K::kHighLevel, start, start + length}},
    });
}

ReferenceTrajectory complex_linear() {
    return ReferenceTrajectory({
        {0.0, Setpoint{K::kLowLevel}},
        {K::kComplexRampStart, SmoothConnect{K::kLowLevel, K::kHighLevel, K::kComplexRampStart, K::kComplexRampEnd}},
        {K::kComplexRampEnd, Sinusoid{K::kHighLevel, K::kComplexAmplitude, K::kComplexPeriod, K::kComplexRampEnd}},
    });
}

ReferenceTrajectory complex_nonlinear() {
    return ReferenceTrajectory({
        {0.0, Setpoint{K::kLowLevel}},
        {K::kNonlinearSineStart,
         Sinusoid{K::kLowLevel, K::kNonlinearSineAmplitude, K::kNonlinearSinePeriod, K::kNonlinearSineStart}},
    });
}

Scenario base(PlantKind plant, ReferenceTrajectory ref, double duration) {
    Scenario s;
    s.plant = plant;
    s.reference = std::move(ref);
    s.duration = duration;
    s.h = K::kSamplingPeriod;
    s.substeps = K::kSubsteps;
    s.noise = {K::kNoiseStd, 1};
    s.tau = K::kWindow;
    s.metrics.score_from = K::kScoreFrom;
    s.metrics.band = K::kRecoveryBand;
    s.metrics.decay_from = K::kDecayFrom;
    s.metrics.decay_to = K::kDecayTo;
    return s;
}

void add_pair(std::vector<CatalogEntry>& out, const std::string& group, const std::string& what, Scenario s) {
    const double ki = s.plant == PlantKind::Linear ? K::kIntegralGainLinear : K::kIntegralGainNonlinear;

    Scenario integral = s;
    integral.name = group + "/integral";
    integral.controller = ControllerKind::Integral;
    integral.gains.K_I = ki;
    out.push_back({integral.name, group, "Integral feedback, " + what, integral});

    Scenario ip = s;
    ip.name = group + "/ip";
    ip.controller = ControllerKind::IP;
    ip.estimator = EstimatorKind::Integral;
    ip.model = {1, K::kAlpha, 0.0};
    ip.gains.K_P = K::kProportionalGain;
    out.push_back({ip.name, group, "iP, " + what, ip});
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> out;

    {
        Scenario s = base(PlantKind::Linear, setpoint(), K::kLinearDuration);
        s.fault = ActuatorFault{1.0, K::kFaultEfficiency, K::kFaultTime};
        s.metrics.event_time = K::kFaultTime;
        add_pair(out, "lin-i", "linear plant, constant reference trajectory, control efficiency loss", s);
    }
    {
        Scenario s = base(PlantKind::Linear, connection(K::kSlowStart, K::kSlowDuration), K::kSlowDurationRun);
        s.metrics.score_from = K::kSlowScoreFrom;
        add_pair(out, "lin-ii", "linear plant, slow connection between two setpoints", s);
    }
    add_pair(out, "lin-iii", "linear plant, fast connection between two setpoints",
             base(PlantKind::Linear, connection(K::kFastStart, K::kFastDuration), K::kLinearDuration));
    add_pair(out, "lin-iv", "linear plant, complex reference trajectory",
             base(PlantKind::Linear, complex_linear(), K::kLinearDuration));
    add_pair(out, "nl-i", "nonlinear plant, constant reference trajectory, without any perturbation",
             base(PlantKind::Nonlinear, setpoint(), K::kNonlinearDuration));
    {
        Scenario s = base(PlantKind::Nonlinear, setpoint(), K::kNonlinearDuration);
        s.perturbation = SineOnset{K::kPerturbationAmplitude, K::kPerturbationPeriod, K::kPerturbationOnset};
        s.metrics.event_time = K::kPerturbationOnset;
        add_pair(out, "nl-ii", "nonlinear plant, constant reference trajectory, with perturbation", s);
    }
    add_pair(out, "nl-iii", "nonlinear plant, non-constant reference trajectory, without any perturbation",
             base(PlantKind::Nonlinear, complex_nonlinear(), K::kNonlinearDuration));
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& scenario_catalog() {
    static const std::vector<CatalogEntry> catalog = build();
    return catalog;
}

const CatalogEntry& find_scenario(std::string_view name) {
    const auto& cat = scenario_catalog();
    auto it = std::find_if(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.name == name; });
    if (it == cat.end()) throw ConfigError("unknown scenario '" + std::string(name) + "'");
    return *it;
}

std::vector<std::string> scenario_groups() {
    std::vector<std::string> groups;
    for (const auto& e : scenario_catalog())
        if (groups.empty() || groups.back() != e.scenario) groups.push_back(e.scenario);
    return groups;
}

}  // namespace mfc
