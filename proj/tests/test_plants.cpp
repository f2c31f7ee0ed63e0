#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "mfc/errors.hpp"
#include "mfc/plants.hpp"

using namespace mfc;

namespace {

// Step response of 2(s+1)/(s^2+s+1) by partial fractions:
// Y(s) = 2/s - 2s/(s^2+s+1)  =>  y(t) = 2 - 2 e^{-t/2} (cos wt - sin(wt)/sqrt(3)),  w = sqrt(3)/2.
double analytic_step(double t) {
    const double w = std::sqrt(3.0) / 2.0;
    return 2.0 - 2.0 * std::exp(-0.5 * t) * (std::cos(w * t) - std::sin(w * t) / std::sqrt(3.0));
}

double simulate_linear_step(double dt, double horizon) {
    Plant p = LinearPlant{};
    const int n = static_cast<int>(std::lround(horizon / dt));
    for (int i = 0; i < n; ++i) plant_step(p, 1.0, 0.0, dt, 1);
    return plant_output(p);
}

}  // namespace

TEST_CASE("state-space realization matches the transfer function") {
    using C = std::complex<double>;
    for (C s : {C(0.3, 0.0), C(0.0, 1.0), C(-0.2, 2.5), C(4.0, -1.0), C(1e-3, 10.0)}) {
        // C (sI - A)^{-1} B for the 2x2 case.
        const auto& A = LinearPlant::A;
        const C a = s - A[0][0], b = -A[0][1], c = -A[1][0], d = s - A[1][1];
        const C det = a * d - b * c;
        const C x0 = (d * LinearPlant::B[0] - b * LinearPlant::B[1]) / det;
        const C x1 = (-c * LinearPlant::B[0] + a * LinearPlant::B[1]) / det;
        const C g = LinearPlant::C[0] * x0 + LinearPlant::C[1] * x1;
        const C expected = 2.0 * (s + 1.0) / (s * s + s + 1.0);
        CHECK(std::abs(g - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("plant_output read-out") {
    CHECK(plant_output(LinearPlant{{1.0, 0.0}}) == 2.0);
    CHECK(plant_output(LinearPlant{{1.0, 1.0}}) == 4.0);
    CHECK(plant_output(NonlinearPlant{0.3}) == 0.3);
}

TEST_CASE("plant_step equilibria and convergence") {
    Plant lin = LinearPlant{};
    for (int i = 0; i < 100; ++i) plant_step(lin, 0.0, 0.0, 0.01, 10);
    CHECK(std::get<LinearPlant>(lin).x == std::array<double, 2>{0.0, 0.0});

    lin = LinearPlant{};
    for (int i = 0; i < 6000; ++i) plant_step(lin, 1.0, 0.0, 0.01, 10);
    CHECK(std::abs(plant_output(lin) - 2.0) < 1e-3);

    Plant nl = NonlinearPlant{};
    for (int i = 0; i < 2000; ++i) plant_step(nl, 1.0, 0.0, 0.01, 10);
    CHECK(std::abs(plant_output(nl) - 1.0) < 1e-4);

    CHECK_THROWS_AS(plant_step(nl, 1.0, 0.0, 0.0, 10), DomainError);
    CHECK_THROWS_AS(plant_step(nl, 1.0, 0.0, 0.01, 0), DomainError);
}

TEST_CASE("non-finite state raises an integration error with its time") {
    Plant nl = NonlinearPlant{};
    try {
        plant_step(nl, 1e200, 0.0, 0.01, 10, 3.0);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.time() > 3.0);
        CHECK(e.time() <= 3.01 + 1e-12);
    }
    CHECK_THROWS_AS(plant_step(nl, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.01, 1), IntegrationError);
}

TEST_CASE("RK4 is fourth order") {
    const double reference = simulate_linear_step(0.1 / 16.0, 5.0);
    const double err_coarse = std::abs(simulate_linear_step(0.1, 5.0) - reference);
    const double err_fine = std::abs(simulate_linear_step(0.05, 5.0) - reference);
    const double ratio = err_coarse / err_fine;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("linear step response matches the partial-fraction oracle") {
    Plant p = LinearPlant{};
    double worst = 0.0;
    const double dt = 1e-3;
    for (int i = 0; i <= 20000; ++i) {
        worst = std::max(worst, std::abs(plant_output(p) - analytic_step(i * dt)));
        plant_step(p, 1.0, 0.0, dt, 1);
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("free responses decay") {
    Plant lin = LinearPlant{{1.0, 0.0}};
    double bound_ratio = 0.0;
    for (int i = 1; i <= 3000; ++i) {
        plant_step(lin, 0.0, 0.0, 0.01, 10);
        const double t = i * 0.01;
        bound_ratio = std::max(bound_ratio, std::abs(plant_output(lin)) / std::exp(-0.45 * t));
    }
    CHECK(bound_ratio < 10.0);

    Plant nl = NonlinearPlant{2.0};
    double prev = plant_output(nl);
    for (int i = 0; i < 1000; ++i) {
        plant_step(nl, 0.0, 0.0, 0.01, 10);
        CHECK(std::abs(plant_output(nl)) < std::abs(prev));
        prev = plant_output(nl);
    }
}

TEST_CASE("apply_fault") {
    const ActuatorFault fault{1.0, 0.5, 15.0};
    CHECK(apply_fault(fault, 2.0, 10.0) == 2.0);
    CHECK(apply_fault(fault, 2.0, 20.0) == 1.0);
    CHECK(apply_fault(fault, 2.0, 15.0) == 1.0);
    CHECK(apply_fault(ActuatorFault{}, -3.0, 123.0) == -3.0);
}

TEST_CASE("oracle_F examples") {
    CHECK(oracle_F(NonlinearPlant{0.0}, 1.0, 1.0, 0.0, 1.0) == 0.0);
    CHECK(oracle_F(NonlinearPlant{1.0}, 0.0, 0.0, 0.0, 1.0) == -1.0);
    CHECK(oracle_F(LinearPlant{}, 0.0, 0.0, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(oracle_F(LinearPlant{}, 0.0, 0.0, 0.0, 1.0, 2), ConfigError);

    // Under a fault the commanded and effective inputs differ and F absorbs the gap.
    const Plant p = NonlinearPlant{0.5};
    CHECK(oracle_F(p, 2.0, 1.0, 0.0, 1.0) == doctest::Approx(-0.5 + 1.0 - 2.0));
}

TEST_CASE("input_for_rate inverts output_rate") {
    for (const Plant& p : {Plant{LinearPlant{{0.3, -0.7}}}, Plant{NonlinearPlant{0.8}}}) {
        for (double target : {-2.0, 0.0, 0.4, 3.0}) {
            for (double pert : {0.0, 0.15}) {
                const double u = input_for_rate(p, target, pert);
                CHECK(output_rate(p, u, pert) == doctest::Approx(target).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("input_for_step lands the output on target after one held step") {
    for (const Plant& p : {Plant{LinearPlant{{0.3, -0.7}}}, Plant{NonlinearPlant{0.8}}, Plant{NonlinearPlant{-1.5}}}) {
        for (double delta : {-0.05, 0.0, 0.001, 0.2}) {
            for (double pert : {0.0, 0.15}) {
                const double target = plant_output(p) + delta;
                const double u = input_for_step(p, target, pert, 0.01, 10, 3.0);
                Plant q = p;
                plant_step(q, u, pert, 0.01, 10, 3.0);
                CHECK(std::abs(plant_output(q) - target) < 1e-13);
            }
        }
    }
}
