/**
 * @file sim.hpp
 * @brief Sampled closed-loop simulation and tracking metrics.
 *
 * Per sample k (t_k = k h):
 *   1. read y_true from the plant
 *   2. y_meas = y_true + noise
 *   3. e = y_meas - y*(t_k)
 *   4. the controller sees (y_meas, e, y*'(t_k)) only
 *   5. u_k is computed and the actuator fault turns it into u_eff
 *   6. the plant integrates over [t_k, t_k + h] with u_eff and the perturbation held
 */
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfc/controllers.hpp"
#include "mfc/plants.hpp"
#include "mfc/signals.hpp"

namespace mfc {

enum class ControllerKind { Integral, PI, PID, DiscretePI, IP, IPD, IPID, IPOracle };
enum class EstimatorKind { Integral, ClosedLoop, Oracle };

std::string_view to_string(ControllerKind kind);
std::string_view to_string(EstimatorKind kind);
std::string_view to_string(PlantKind kind);
/// @throws ConfigError on unknown names.
ControllerKind parse_controller_kind(std::string_view name);
EstimatorKind parse_estimator_kind(std::string_view name);
PlantKind parse_plant_kind(std::string_view name);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct MetricsConfig {
    double score_from = 0.0;                ///< rmse / max-error window start
    double band = 0.05;                     ///< settling band on |y_true - y*|
    std::optional<double> event_time;       ///< fault or perturbation onset
    std::optional<double> decay_from;       ///< log-fit window for decay_rate
    std::optional<double> decay_to;
};

/**
 * @brief A fully pinned closed-loop experiment.
 *
 * Classic laws (integral, pi, pid) act on the regulation error y* - y, so
 * positive gains give negative feedback. discrete_pi and the intelligent laws
 * act on e = y - y*.
 */
struct Scenario {
    std::string name;
    PlantKind plant = PlantKind::Linear;
    std::optional<ActuatorFault> fault;
    ReferenceTrajectory reference = ReferenceTrajectory::constant(1.0);
    PerturbationSpec perturbation = NoPerturbation{};
    NoiseSpec noise{};
    ControllerKind controller = ControllerKind::IP;
    EstimatorKind estimator = EstimatorKind::Integral;
    Gains gains{};
    UltraLocalModel model{};
    double tau = 0.3;
    double duration = 30.0;
    double h = 0.01;
    int substeps = 10;
    MetricsConfig metrics{};

    /// @throws ConfigError
    void validate() const;
    /// floor(duration / h), tolerant to rounding.
    std::size_t sample_count() const;
};

/// Column-oriented record of one run; e_meas = y_meas - ystar.
struct SimTrace {
    std::vector<double> t, u, y_true, y_meas, ystar, e_meas;
    /// F driving an intelligent controller, and the other estimator evaluated on the same data (NaN otherwise).
    std::vector<double> f_used, f_monitor;

    std::size_t size() const noexcept { return t.size(); }
    double e_score(std::size_t k) const { return y_true[k] - ystar[k]; }
    void reserve(std::size_t n);
};

struct SimOptions {
    /// Optional hook applied to each measurement before the controller sees it: (k, y_meas) -> y_meas.
    std::function<double(std::size_t, double)> measurement_tap;
};

/**
 * @brief Run a scenario to completion.
 *
 * @throws ConfigError, IntegrationError (with sample index), DivergenceError.
 */
SimTrace run_closed_loop(const Scenario& scenario, const SimOptions& options = {});

/// RMS of y_true - y* over samples with t >= from. @throws DomainError on an empty window.
double rmse(const SimTrace& trace, double from);

/// max |y_true - y*| over samples with t >= from. @throws DomainError on an empty window.
double max_abs_error(const SimTrace& trace, double from);

/// First t >= event_time after which |y_true - y*| stays within band; kNever if it does not.
double settling_time(const SimTrace& trace, double band, double event_time);

/// Negated least-squares slope of log|y_true - y*| on [t0, t1].
/// @throws IllConditionedFit if the window holds |e| <= 1e-9 or fewer than two samples.
double decay_rate(const SimTrace& trace, double t0, double t1);

struct Metrics {
    double rmse = 0.0;
    double max_abs_error = 0.0;
    double settling_time = kNever;
    std::optional<double> recovery_time;  ///< settling after the event, relative to it
    std::optional<double> decay_rate;     ///< empty when the fit is ill-conditioned or not requested
};

Metrics compute_metrics(const SimTrace& trace, const MetricsConfig& config);

}  // namespace mfc
