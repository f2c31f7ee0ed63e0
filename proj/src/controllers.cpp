#include "mfc/controllers.hpp"

#include <cmath>
#include <string>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

void require_order(const UltraLocalModel& model, int nu, const char* law) {
    model.validate();
    if (model.nu != nu) throw ConfigError(std::string(law) + ": wrong ultra-local model order");
}

void require_alpha(double alpha) {
    if (alpha == 0.0 || !std::isfinite(alpha)) throw ConfigError("alpha must be finite and non-zero");
}

double seeded_prev_e(const ControllerState& state, double e) { return state.primed ? state.prev_e : e; }

void remember(ControllerState& state, double e, double u) {
    state.prev_e = e;
    state.prev_u = u;
    state.primed = true;
}

}  // namespace

void UltraLocalModel::validate() const {
    if (nu != 1 && nu != 2) throw ConfigError("ultra-local model order must be 1 or 2");
    require_alpha(alpha);
}

ControllerState::ControllerState(double sampling_period) : h(sampling_period) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("sampling period must be positive");
}

double error_rate(const ControllerState& state, double e) { return (e - seeded_prev_e(state, e)) / state.h; }

double integral_step(ControllerState& state, double e, double K_I) {
    state.integrator_accum += state.h * e;
    const double u = K_I * state.integrator_accum;
    remember(state, e, u);
    return u;
}

double pid_step(ControllerState& state, double e, double K_P, double K_I, double K_D) {
    const double e_dot = error_rate(state, e);
    state.integrator_accum += state.h * e;
    const double u = K_P * e + K_I * state.integrator_accum + K_D * e_dot;
    remember(state, e, u);
    return u;
}

double discrete_pi_step(ControllerState& state, double e, double k_p, double k_i) {
    const double prev_e = seeded_prev_e(state, e);
    const double u = state.prev_u + k_p * (e - prev_e) + k_i * state.h * e;
    remember(state, e, u);
    return u;
}

double ip_step(const UltraLocalModel& model, double ystar_dot, double e, double K_P) {
    require_order(model, 1, "ip_step");
    return -(model.F_est - ystar_dot + K_P * e) / model.alpha;
}

double ipd_step(const UltraLocalModel& model, double ystar_dot, double e, double e_dot, double K_P, double K_D) {
    require_order(model, 2, "ipd_step");
    double sum = model.F_est - ystar_dot + K_P * e;
    sum += K_D * e_dot;
    return -sum / model.alpha;
}

double ipid_step(const UltraLocalModel& model, double ystar_dot, double e, double K_P, double K_I, double K_D,
                 ControllerState& state) {
    require_order(model, 2, "ipid_step");
    const double e_dot = error_rate(state, e);
    state.integrator_accum += state.h * e;
    double sum = model.F_est - ystar_dot + K_P * e;
    sum += K_I * state.integrator_accum;
    sum += K_D * e_dot;
    const double u = -sum / model.alpha;
    remember(state, e, u);
    return u;
}

double discrete_ip_step(ControllerState& state, double e, double alpha, double K_P) {
    require_alpha(alpha);
    const double prev_e = seeded_prev_e(state, e);
    const double u = state.prev_u - (e - prev_e) / (state.h * alpha) - (K_P / alpha) * e;
    remember(state, e, u);
    return u;
}

DiscretePiGains pi_ip_gain_map(double alpha, double h, double K_P) {
    require_alpha(alpha);
    if (!(h > 0.0)) throw ConfigError("pi_ip_gain_map: sampling period must be positive");
    return {-1.0 / (alpha * h), -K_P / (alpha * h)};
}

}  // namespace mfc
