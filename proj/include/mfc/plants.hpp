/**
 * @file plants.hpp
 * @brief Continuous-time benchmark plants with actuator faults.
 *
 * Linear plant: controllable canonical realization of 2(s+1)/(s^2+s+1),
 *   x' = A x + B (u + p),  y = C x,  A = [[0,1],[-1,-1]], B = [0,1]^T, C = [2,2].
 * Nonlinear plant: y' = -y + u^3 + p.
 *
 * Both are advanced with classical RK4 under a zero-order-held input.
 */
#pragma once

#include <array>
#include <cstddef>
#include <variant>

namespace mfc {

struct LinearPlant {
    std::array<double, 2> x{0.0, 0.0};

    static constexpr std::array<std::array<double, 2>, 2> A{{{0.0, 1.0}, {-1.0, -1.0}}};
    static constexpr std::array<double, 2> B{0.0, 1.0};
    static constexpr std::array<double, 2> C{2.0, 2.0};
};

struct NonlinearPlant {
    double y = 0.0;
};

using Plant = std::variant<LinearPlant, NonlinearPlant>;

enum class PlantKind { Linear, Nonlinear };

Plant make_plant(PlantKind kind);
PlantKind kind_of(const Plant& plant);

/// Actuator efficiency switching once, from efficiency_before to efficiency_after at fault_time.
struct ActuatorFault {
    double efficiency_before = 1.0;
    double efficiency_after = 1.0;
    double fault_time = 0.0;

    double efficiency(double t) const noexcept { return t < fault_time ? efficiency_before : efficiency_after; }
};

/// u * efficiency(t).
double apply_fault(const ActuatorFault& fault, double u, double t);

/**
 * @brief Advance @p plant by @p dt holding @p u_eff and @p pert constant.
 *
 * Classical RK4 with @p substeps equal inner steps. @p t0 is only used to
 * label an IntegrationError if the state stops being finite.
 */
void plant_step(Plant& plant, double u_eff, double pert, double dt, int substeps, double t0 = 0.0);

double plant_output(const Plant& plant);

/// Exact output derivative y' at the current state for the given effective input.
double output_rate(const Plant& plant, double u_eff, double pert);

/// Effective input that makes y' equal @p target at the current state (inverse of output_rate).
double input_for_rate(const Plant& plant, double target, double pert);

/**
 * @brief Effective input that, held for one step of length @p dt, brings the output to @p target_y.
 *
 * Both plants have a one-step output that is strictly increasing in the held input, so the
 * answer is found by bracketing from input_for_rate() and bisecting to machine resolution.
 * Throws DomainError if no bracket is found.
 */
double input_for_step(const Plant& plant, double target_y, double pert, double dt, int substeps, double t0 = 0.0);

/**
 * @brief Ground-truth F of the first-order ultra-local model.
 *
 * F = y' - alpha * u, with y' from the exact plant equations driven by @p u_eff
 * and u the commanded input. The two differ under an actuator fault.
 *
 * @throws ConfigError if nu != 1.
 */
double oracle_F(const Plant& plant, double u, double u_eff, double pert, double alpha, int nu = 1);

}  // namespace mfc
