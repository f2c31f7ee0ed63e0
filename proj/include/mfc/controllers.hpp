/**
 * @file controllers.hpp
 * @brief Classic and intelligent feedback laws in sampled form.
 *
 * All laws are one-step transitions on a ControllerState. Integrals use the
 * left-rectangle (Riemann) sum I(t) = I(t-h) + h e(t) and derivatives the
 * one-sample backward difference. No saturation, no anti-windup.
 *
 * The intelligent laws act on the ultra-local model y^(nu) = F + alpha u:
 *
 *   iPID: u = -(F - y*' + K_P e + K_I int(e) + K_D e') / alpha
 *   iPD:  u = -(F - y*' + K_P e + K_D e') / alpha
 *   iP:   u = -(F - y*' + K_P e) / alpha
 *
 * with e = y - y*.
 */
#pragma once

namespace mfc {

/// Ultra-local model parameters plus the running estimate of F.
struct UltraLocalModel {
    int nu = 1;
    double alpha = 1.0;
    double F_est = 0.0;

    /// @throws ConfigError unless nu is 1 or 2 and alpha is finite and non-zero.
    void validate() const;
};

struct Gains {
    double K_P = 0.0;
    double K_I = 0.0;
    double K_D = 0.0;
    // Discrete PI (velocity form) gains.
    double k_p = 0.0;
    double k_i = 0.0;
};

/**
 * @brief Memory of a sampled controller: one previous sample plus the Riemann sum.
 *
 * Until the first step, `primed` is false and derivative-like laws seed
 * prev_e with the first error they see.
 */
struct ControllerState {
    explicit ControllerState(double sampling_period);

    double h;
    double integrator_accum = 0.0;
    double prev_e = 0.0;
    double prev_u = 0.0;
    double prev_y = 0.0;
    bool primed = false;
};

/// accum += h e;  u = K_I accum.
double integral_step(ControllerState& state, double e, double K_I);

/// u = K_P e + K_I accum + K_D (e - prev_e) / h.
double pid_step(ControllerState& state, double e, double K_P, double K_I, double K_D);

/// u = prev_u + k_p (e - prev_e) + k_i h e.
double discrete_pi_step(ControllerState& state, double e, double k_p, double k_i);

/// First-order iP. Requires nu == 1.
double ip_step(const UltraLocalModel& model, double ystar_dot, double e, double K_P);

/// iPD with an externally supplied error derivative. Requires nu == 2.
double ipd_step(const UltraLocalModel& model, double ystar_dot, double e, double e_dot, double K_P, double K_D);

/// iPID; integral and backward-difference derivative come from @p state. Requires nu == 2.
double ipid_step(const UltraLocalModel& model, double ystar_dot, double e, double K_P, double K_I, double K_D,
                 ControllerState& state);

/// Backward difference (e - prev_e) / h, seeding prev_e on the first call. Does not update memory.
double error_rate(const ControllerState& state, double e);

/**
 * @brief iP with F replaced by the one-sample estimate (y(t)-y(t-h))/h - alpha u(t-h):
 *
 *   u(t) = u(t-h) - (e(t) - e(t-h)) / (h alpha) - (K_P / alpha) e(t)
 */
double discrete_ip_step(ControllerState& state, double e, double alpha, double K_P);

struct DiscretePiGains {
    double k_p;
    double k_i;
};

/// Discrete PI gains making discrete_pi_step identical to discrete_ip_step:
/// k_p = -1/(alpha h), k_i = -K_P/(alpha h).
DiscretePiGains pi_ip_gain_map(double alpha, double h, double K_P);

}  // namespace mfc
