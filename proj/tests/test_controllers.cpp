#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mfc/controllers.hpp"
#include "mfc/errors.hpp"

using namespace mfc;

namespace {

UltraLocalModel ulm(int nu, double alpha, double F) { return {nu, alpha, F}; }

std::vector<double> random_errors(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> out(n);
    for (auto& e : out) e = dist(rng);
    return out;
}

}  // namespace

TEST_CASE("integral_step") {
    ControllerState rest(0.01);
    for (int i = 0; i < 500; ++i) CHECK(integral_step(rest, 0.0, 0.5) == 0.0);

    ControllerState s(0.01);
    double u = 0.0;
    for (int i = 0; i < 1000; ++i) u = integral_step(s, 1.0, 0.5);
    CHECK(std::abs(u - 5.0) <= 0.005 + 1e-12);

    ControllerState alt(0.01);
    for (int i = 0; i < 1000; ++i) CHECK(std::abs(integral_step(alt, i % 2 ? -1.0 : 1.0, 1.0)) <= 0.01 + 1e-15);
}

TEST_CASE("pid_step") {
    ControllerState p(0.01);
    CHECK(pid_step(p, 0.4, 2.0, 0.0, 0.0) == doctest::Approx(0.8));

    ControllerState pi(0.01);
    double u = 0.0;
    for (int i = 0; i < 1000; ++i) u = pid_step(pi, 1.0, 1.0, 0.5, 0.0);
    CHECK(std::abs(u - 6.0) <= 0.005 + 1e-12);

    ControllerState d(0.01);
    CHECK(pid_step(d, 0.0, 0.0, 0.0, 1.0) == 0.0);
    CHECK(pid_step(d, 0.1, 0.0, 0.0, 1.0) == doctest::Approx(10.0));

    // First sample seeds the derivative memory: no kick.
    ControllerState first(0.01);
    CHECK(pid_step(first, 0.7, 0.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("discrete_pi_step") {
    ControllerState s(0.1);
    s.prev_e = 1.0;
    s.primed = true;
    CHECK(discrete_pi_step(s, 1.0, 2.0, 3.0) == doctest::Approx(0.3));

    ControllerState frozen(0.1);
    frozen.prev_u = 0.42;
    frozen.primed = true;
    for (int i = 0; i < 10; ++i) CHECK(discrete_pi_step(frozen, 0.0, 2.0, 3.0) == 0.42);

    ControllerState step(0.1);
    CHECK(discrete_pi_step(step, 0.0, 2.0, 0.0) == 0.0);
    CHECK(discrete_pi_step(step, 1.0, 2.0, 0.0) == 2.0);
    for (int i = 0; i < 5; ++i) CHECK(discrete_pi_step(step, 1.0, 2.0, 0.0) == 2.0);
}

TEST_CASE("discrete PI is the velocity form of the Riemann-sum PI") {
    const double kp = 1.3, ki = 0.7, h = 0.05;
    ControllerState velocity(h), positional(h);
    // Positional form starts from a zero previous error, so prime the velocity form the same way.
    velocity.primed = true;
    for (double e : random_errors(2000, 3)) {
        const double uv = discrete_pi_step(velocity, e, kp, ki);
        const double up = pid_step(positional, e, kp, ki, 0.0);
        CHECK(uv == doctest::Approx(up).epsilon(1e-9));
    }
}

TEST_CASE("ip_step") {
    CHECK(ip_step(ulm(1, 1.0, 0.0), 0.0, 0.0, 1.0) == 0.0);
    CHECK(ip_step(ulm(1, 1.0, 2.0), 1.0, 0.5, 1.0) == -1.5);
    CHECK(ip_step(ulm(1, 2.0, 0.0), 0.0, 1.0, 4.0) == -2.0);
    CHECK_THROWS_AS(ip_step(ulm(1, 0.0, 0.0), 0.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ip_step(ulm(2, 1.0, 0.0), 0.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("ipd_step") {
    CHECK(ipd_step(ulm(2, 1.0, 0.0), 0.0, 0.0, 0.0, 1.0, 1.0) == 0.0);
    CHECK(ipd_step(ulm(2, 1.0, 1.0), 0.0, 0.0, 0.5, 0.0, 2.0) == -2.0);
    CHECK_THROWS_AS(ipd_step(ulm(2, 0.0, 1.0), 0.0, 0.0, 0.5, 0.0, 2.0), ConfigError);
}

TEST_CASE("ipid_step") {
    ControllerState zero(0.01);
    CHECK(ipid_step(ulm(2, 1.0, 0.0), 0.0, 0.0, 0.0, 0.0, 0.0, zero) == 0.0);

    ControllerState s(0.01);
    double u = 0.0;
    for (int i = 0; i < 100; ++i) u = ipid_step(ulm(2, 1.0, 0.0), 0.0, 1.0, 0.0, 1.0, 0.0, s);
    CHECK(std::abs(u + 1.0) <= 0.01 + 1e-12);

    ControllerState bad(0.01);
    CHECK_THROWS_AS(ipid_step(ulm(2, 0.0, 0.0), 0.0, 0.0, 0.0, 0.0, 0.0, bad), ConfigError);
}

TEST_CASE("degeneration chain iPID -> iPD -> iP is exact") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    ControllerState ipid_state(0.01), ipd_state(0.01);
    for (int i = 0; i < 5000; ++i) {
        const double F = dist(rng), yd = dist(rng), e = dist(rng), kp = dist(rng), kd = dist(rng);
        const double alpha = 0.5 + std::abs(dist(rng));
        const UltraLocalModel second = ulm(2, alpha, F);

        const double e_dot = error_rate(ipd_state, e);
        const double u_ipd = ipd_step(second, yd, e, e_dot, kp, kd);
        ipd_state.prev_e = e;
        ipd_state.primed = true;
        const double u_ipid = ipid_step(second, yd, e, kp, 0.0, kd, ipid_state);
        CHECK(u_ipid == u_ipd);

        const double u_ipd0 = ipd_step(second, yd, e, e_dot, kp, 0.0);
        CHECK(u_ipd0 == ip_step(ulm(1, alpha, F), yd, e, kp));
    }
}

TEST_CASE("discrete_ip_step") {
    ControllerState s(0.01);
    s.prev_e = 1.0;
    s.primed = true;
    CHECK(discrete_ip_step(s, 1.0, 1.0, 1.0) == -1.0);

    ControllerState frozen(0.01);
    frozen.prev_u = -0.3;
    frozen.primed = true;
    for (int i = 0; i < 10; ++i) CHECK(discrete_ip_step(frozen, 0.0, 1.0, 1.0) == -0.3);

    ControllerState bad(0.01);
    CHECK_THROWS_AS(discrete_ip_step(bad, 1.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("pi_ip_gain_map") {
    auto g = pi_ip_gain_map(1.0, 0.01, 1.0);
    CHECK(g.k_p == doctest::Approx(-100.0));
    CHECK(g.k_i == doctest::Approx(-100.0));
    g = pi_ip_gain_map(2.0, 0.1, 0.0);
    CHECK(g.k_p == doctest::Approx(-5.0));
    CHECK(g.k_i == 0.0);
    g = pi_ip_gain_map(-1.0, 1.0, 3.0);
    CHECK(g.k_p == doctest::Approx(1.0));
    CHECK(g.k_i == doctest::Approx(3.0));
    CHECK_THROWS_AS(pi_ip_gain_map(0.0, 0.1, 1.0), ConfigError);
    CHECK_THROWS_AS(pi_ip_gain_map(1.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("discrete PI under the gain map equals the discrete iP") {
    unsigned seed = 100;
    for (double h : {0.001, 0.01, 0.1}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (double kp : {0.2, 1.0, 5.0}) {
                const auto gains = pi_ip_gain_map(alpha, h, kp);
                ControllerState pi(h), ip(h);
                double worst = 0.0;
                for (double e : random_errors(10000, ++seed)) {
                    const double a = discrete_pi_step(pi, e, gains.k_p, gains.k_i);
                    const double b = discrete_ip_step(ip, e, alpha, kp);
                    worst = std::max(worst, std::abs(a - b));
                }
                CHECK(worst < 1e-9);
            }
        }
    }
}
