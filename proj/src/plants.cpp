#include "mfc/plants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

using Vec2 = std::array<double, 2>;

Vec2 linear_rhs(const Vec2& x, double input) {
    const auto& A = LinearPlant::A;
    const auto& B = LinearPlant::B;
    return {A[0][0] * x[0] + A[0][1] * x[1] + B[0] * input, A[1][0] * x[0] + A[1][1] * x[1] + B[1] * input};
}

Vec2 axpy(const Vec2& x, double a, const Vec2& k) { return {x[0] + a * k[0], x[1] + a * k[1]}; }

void rk4(LinearPlant& p, double input, double dt) {
    const Vec2 k1 = linear_rhs(p.x, input);
    const Vec2 k2 = linear_rhs(axpy(p.x, 0.5 * dt, k1), input);
    const Vec2 k3 = linear_rhs(axpy(p.x, 0.5 * dt, k2), input);
    const Vec2 k4 = linear_rhs(axpy(p.x, dt, k3), input);
    for (int i = 0; i < 2; ++i) p.x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void rk4(NonlinearPlant& p, double forcing, double dt) {
    auto rhs = [forcing](double y) { return -y + forcing; };
    const double k1 = rhs(p.y);
    const double k2 = rhs(p.y + 0.5 * dt * k1);
    const double k3 = rhs(p.y + 0.5 * dt * k2);
    const double k4 = rhs(p.y + dt * k3);
    p.y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

bool finite(const LinearPlant& p) { return std::isfinite(p.x[0]) && std::isfinite(p.x[1]); }
bool finite(const NonlinearPlant& p) { return std::isfinite(p.y); }

double c_dot(const Vec2& v) { return LinearPlant::C[0] * v[0] + LinearPlant::C[1] * v[1]; }

}  // namespace

Plant make_plant(PlantKind kind) {
    if (kind == PlantKind::Linear) return LinearPlant{};
    return NonlinearPlant{};
}

PlantKind kind_of(const Plant& plant) {
    return std::holds_alternative<LinearPlant>(plant) ? PlantKind::Linear : PlantKind::Nonlinear;
}

double apply_fault(const ActuatorFault& fault, double u, double t) { return u * fault.efficiency(t); }

void plant_step(Plant& plant, double u_eff, double pert, double dt, int substeps, double t0) {
    if (!(dt > 0.0)) throw DomainError("plant_step: dt must be positive");
    if (substeps < 1) throw DomainError("plant_step: substeps must be >= 1");
    const double inner = dt / substeps;
    std::visit(
        [&](auto& p) {
            using T = std::decay_t<decltype(p)>;
            // The perturbation is input-matched on the linear plant and additive on the nonlinear one.
            double drive = 0.0;
            if constexpr (std::is_same_v<T, LinearPlant>)
                drive = u_eff + pert;
            else
                drive = u_eff * u_eff * u_eff + pert;
            for (int i = 0; i < substeps; ++i) {
                rk4(p, drive, inner);
                if (!finite(p)) throw IntegrationError(t0 + (i + 1) * inner);
            }
        },
        plant);
}

double plant_output(const Plant& plant) {
    if (const auto* lin = std::get_if<LinearPlant>(&plant)) return c_dot(lin->x);
    return std::get<NonlinearPlant>(plant).y;
}

double output_rate(const Plant& plant, double u_eff, double pert) {
    if (const auto* lin = std::get_if<LinearPlant>(&plant)) return c_dot(linear_rhs(lin->x, u_eff + pert));
    const double y = std::get<NonlinearPlant>(plant).y;
    return -y + u_eff * u_eff * u_eff + pert;
}

double input_for_rate(const Plant& plant, double target, double pert) {
    if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
        const double free_rate = c_dot(linear_rhs(lin->x, 0.0));
        const double gain = c_dot(LinearPlant::B);
        return (target - free_rate) / gain - pert;
    }
    const double y = std::get<NonlinearPlant>(plant).y;
    return std::cbrt(target + y - pert);
}

double input_for_step(const Plant& plant, double target_y, double pert, double dt, int substeps, double t0) {
    const auto reached = [&](double u_eff) {
        Plant trial = plant;
        plant_step(trial, u_eff, pert, dt, substeps, t0);
        return plant_output(trial) - target_y;
    };
    const double guess = input_for_rate(plant, (target_y - plant_output(plant)) / dt, pert);
    double step = std::max(1.0, std::abs(guess)) * 1e-3;
    double lo = guess, hi = guess;
    double f_lo = reached(lo), f_hi = f_lo;
    for (int i = 0; f_lo > 0.0 || f_hi < 0.0; ++i) {
        if (i == 200) throw DomainError("input_for_step: target output not reachable in one step");
        if (f_lo > 0.0) {
            hi = lo;
            f_hi = f_lo;
            lo -= step;
            f_lo = reached(lo);
        } else {
            lo = hi;
            f_lo = f_hi;
            hi += step;
            f_hi = reached(hi);
        }
        step *= 2.0;
    }
    // Secant-guarded bisection: linear plants converge in one or two secant steps.
    for (int i = 0; i < 200 && f_lo != 0.0 && f_hi != 0.0; ++i) {
        double mid = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f_mid = reached(mid);
        if (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo))) break;
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

double oracle_F(const Plant& plant, double u, double u_eff, double pert, double alpha, int nu) {
    if (nu != 1) throw ConfigError("oracle_F: only first-order ultra-local models are supported");
    return output_rate(plant, u_eff, pert) - alpha * u;
}

}  // namespace mfc
