#include "mfc/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "mfc/errors.hpp"
#include "mfc/estimators.hpp"

namespace mfc {

namespace {

constexpr std::array<std::pair<ControllerKind, std::string_view>, 8> kControllerNames{{
    {ControllerKind::Integral, "integral"},
    {ControllerKind::PI, "pi"},
    {ControllerKind::PID, "pid"},
    {ControllerKind::DiscretePI, "discrete_pi"},
    {ControllerKind::IP, "ip"},
    {ControllerKind::IPD, "ipd"},
    {ControllerKind::IPID, "ipid"},
    {ControllerKind::IPOracle, "ip_oracle"},
}};

constexpr std::array<std::pair<EstimatorKind, std::string_view>, 3> kEstimatorNames{{
    {EstimatorKind::Integral, "integral"},
    {EstimatorKind::ClosedLoop, "closedloop"},
    {EstimatorKind::Oracle, "oracle"},
}};

constexpr std::array<std::pair<PlantKind, std::string_view>, 2> kPlantNames{{
    {PlantKind::Linear, "linear"},
    {PlantKind::Nonlinear, "nonlinear"},
}};

template <class Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
    for (const auto& [v, n] : table)
        if (v == value) return n;
    return "?";
}

template <class Enum, std::size_t N>
Enum parse_name(const std::array<std::pair<Enum, std::string_view>, N>& table, std::string_view name,
                const char* what) {
    for (const auto& [v, n] : table)
        if (n == name) return v;
    throw ConfigError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

bool is_intelligent(ControllerKind kind) {
    return kind == ControllerKind::IP || kind == ControllerKind::IPOracle;
}

// Samples with t >= from, as a half-open index range start.
std::size_t first_at_or_after(const SimTrace& trace, double from) {
    return static_cast<std::size_t>(std::lower_bound(trace.t.begin(), trace.t.end(), from) - trace.t.begin());
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string_view to_string(ControllerKind kind) { return name_of(kControllerNames, kind); }
std::string_view to_string(EstimatorKind kind) { return name_of(kEstimatorNames, kind); }
std::string_view to_string(PlantKind kind) { return name_of(kPlantNames, kind); }
ControllerKind parse_controller_kind(std::string_view name) {
    return parse_name(kControllerNames, name, "controller");
}
EstimatorKind parse_estimator_kind(std::string_view name) { return parse_name(kEstimatorNames, name, "estimator"); }
PlantKind parse_plant_kind(std::string_view name) { return parse_name(kPlantNames, name, "plant"); }

void Scenario::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("sampling period h must be positive");
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be finite and >= 0");
    if (substeps < 1) throw ConfigError("substeps must be >= 1");
    if (!(noise.std >= 0.0) || !std::isfinite(noise.std)) throw ConfigError("noise std must be finite and >= 0");
    if (fault) {
        for (double eff : {fault->efficiency_before, fault->efficiency_after})
            if (!(eff > 0.0 && eff <= 1.0)) throw ConfigError("actuator efficiencies must lie in (0, 1]");
    }
    if (const auto* s = std::get_if<SineOnset>(&perturbation); s && !(s->period > 0.0))
        throw ConfigError("perturbation period must be positive");
    if (!(metrics.band > 0.0)) throw ConfigError("settling band must be positive");
    switch (controller) {
        case ControllerKind::IP:
        case ControllerKind::IPOracle:
            model.validate();
            if (model.nu != 1) throw ConfigError("the iP runs on a first-order ultra-local model (nu = 1)");
            if (controller == ControllerKind::IP && estimator != EstimatorKind::Oracle) window_intervals(tau, h);
            break;
        case ControllerKind::IPD:
        case ControllerKind::IPID:
            throw ConfigError("closed-loop runs of iPD/iPID need a second-order F estimate, which is not provided");
        case ControllerKind::DiscretePI:
        case ControllerKind::Integral:
        case ControllerKind::PI:
        case ControllerKind::PID:
            break;
    }
}

std::size_t Scenario::sample_count() const {
    return static_cast<std::size_t>(std::floor(duration / h + 1e-9));
}

void SimTrace::reserve(std::size_t n) {
    for (auto* col : {&t, &u, &y_true, &y_meas, &ystar, &e_meas, &f_used, &f_monitor}) col->reserve(n);
}

SimTrace run_closed_loop(const Scenario& sc, const SimOptions& options) {
    sc.validate();
    const std::size_t n = sc.sample_count();
    const double h = sc.h;

    Plant plant = make_plant(sc.plant);
    NoiseGenerator noise(sc.noise);
    ControllerState state(h);
    UltraLocalModel model = sc.model;
    const Gains& g = sc.gains;

    const bool intelligent = is_intelligent(sc.controller);
    const EstimatorKind estimator = sc.controller == ControllerKind::IPOracle ? EstimatorKind::Oracle : sc.estimator;
    // The window is only needed by the intelligent laws; the oracle path still monitors the integral estimate.
    const double tau = intelligent ? sc.tau : h;
    EstimatorWindow<IoSample> io_window(tau, h);
    EstimatorWindow<LoopSample> loop_window(tau, h);

    SimTrace trace;
    trace.reserve(n);
    double prev_u = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        const double y_true = plant_output(plant);
        double y_meas = y_true + noise.sample();
        if (options.measurement_tap) y_meas = options.measurement_tap(k, y_meas);
        const SignalPoint ref = sc.reference.at(t);
        const double e = y_meas - ref.value;
        const double pert = perturbation_value(sc.perturbation, t);
        const double efficiency = sc.fault ? sc.fault->efficiency(t) : 1.0;

        double u = 0.0;
        double f_used = kNaN;
        double f_monitor = kNaN;
        switch (sc.controller) {
            case ControllerKind::Integral:
                u = integral_step(state, -e, g.K_I);
                break;
            case ControllerKind::PI:
                u = pid_step(state, -e, g.K_P, g.K_I, 0.0);
                break;
            case ControllerKind::PID:
                u = pid_step(state, -e, g.K_P, g.K_I, g.K_D);
                break;
            case ControllerKind::DiscretePI:
                u = discrete_pi_step(state, e, g.k_p, g.k_i);
                break;
            case ControllerKind::IP:
            case ControllerKind::IPOracle: {
                // The integral estimator pairs y(t_j) with the input held over (t_{j-1}, t_j].
                io_window.push({y_meas, prev_u});
                const FEstimate from_io = estimate_F_integral(io_window, model.alpha);
                const FEstimate from_loop = estimate_F_closedloop(loop_window, model.alpha, g.K_P);
                switch (estimator) {
                    case EstimatorKind::Integral:
                        model.F_est = from_io.value;
                        f_monitor = from_loop.ready ? from_loop.value : kNaN;
                        break;
                    case EstimatorKind::ClosedLoop:
                        model.F_est = from_loop.value;
                        f_monitor = from_io.ready ? from_io.value : kNaN;
                        break;
                    case EstimatorKind::Oracle: {
                        // Exact knowledge of the plant: F is the value for which the iP command, held over
                        // the sample, lands the output on y*(t+h) + e exp(-K_P h).
                        const double target = sc.reference.at(t + h).value + e * std::exp(-g.K_P * h);
                        const double u_eff = input_for_step(plant, target, pert, h, sc.substeps, t);
                        const double u_cmd = u_eff / efficiency;
                        model.F_est = ref.derivative - g.K_P * e - model.alpha * u_cmd;
                        f_monitor = from_io.ready ? from_io.value : kNaN;
                        break;
                    }
                }
                f_used = model.F_est;
                u = ip_step(model, ref.derivative, e, g.K_P);
                loop_window.push({ref.derivative, u, e});
                break;
            }
            case ControllerKind::IPD:
            case ControllerKind::IPID:
                break;  // rejected by validate()
        }
        if (!std::isfinite(u)) throw DivergenceError(k);

        trace.t.push_back(t);
        trace.u.push_back(u);
        trace.y_true.push_back(y_true);
        trace.y_meas.push_back(y_meas);
        trace.ystar.push_back(ref.value);
        trace.e_meas.push_back(e);
        trace.f_used.push_back(f_used);
        trace.f_monitor.push_back(f_monitor);

        try {
            plant_step(plant, u * efficiency, pert, h, sc.substeps, t);
        } catch (const IntegrationError& err) {
            throw IntegrationError(err.time(), k);
        }
        prev_u = u;
    }
    return trace;
}

double rmse(const SimTrace& trace, double from) {
    const std::size_t begin = first_at_or_after(trace, from);
    if (begin >= trace.size()) throw DomainError("rmse: empty scoring window");
    double sum = 0.0;
    for (std::size_t k = begin; k < trace.size(); ++k) sum += trace.e_score(k) * trace.e_score(k);
    return std::sqrt(sum / static_cast<double>(trace.size() - begin));
}

double max_abs_error(const SimTrace& trace, double from) {
    const std::size_t begin = first_at_or_after(trace, from);
    if (begin >= trace.size()) throw DomainError("max_abs_error: empty scoring window");
    double worst = 0.0;
    for (std::size_t k = begin; k < trace.size(); ++k) worst = std::max(worst, std::abs(trace.e_score(k)));
    return worst;
}

double settling_time(const SimTrace& trace, double band, double event_time) {
    if (!(band > 0.0)) throw DomainError("settling_time: band must be positive");
    const std::size_t begin = first_at_or_after(trace, event_time);
    std::size_t k = trace.size();
    while (k > begin && std::abs(trace.e_score(k - 1)) <= band) --k;
    if (k == begin) return event_time;
    if (k == trace.size()) return kNever;
    return trace.t[k];
}

double decay_rate(const SimTrace& trace, double t0, double t1) {
    const std::size_t begin = first_at_or_after(trace, t0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t k = begin; k < trace.size() && trace.t[k] <= t1; ++k) {
        const double mag = std::abs(trace.e_score(k));
        if (!(mag > 1e-9)) throw IllConditionedFit("decay_rate: error vanishes inside the fit window");
        const double x = trace.t[k];
        const double y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw IllConditionedFit("decay_rate: fewer than two samples in the fit window");
    const double cnt = static_cast<double>(count);
    const double denom = cnt * sxx - sx * sx;
    return -(cnt * sxy - sx * sy) / denom;
}

Metrics compute_metrics(const SimTrace& trace, const MetricsConfig& config) {
    Metrics m;
    if (trace.size() == 0) return m;
    m.rmse = rmse(trace, config.score_from);
    m.max_abs_error = max_abs_error(trace, config.score_from);
    const double origin = config.event_time.value_or(0.0);
    m.settling_time = settling_time(trace, config.band, origin);
    if (config.event_time) m.recovery_time = m.settling_time - origin;
    if (config.decay_from && config.decay_to) {
        try {
            m.decay_rate = decay_rate(trace, *config.decay_from, *config.decay_to);
        } catch (const IllConditionedFit&) {
            m.decay_rate.reset();
        }
    }
    return m;
}

}  // namespace mfc
