#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mfc/controllers.hpp"
#include "mfc/estimators.hpp"

using namespace mfc;

namespace {

constexpr double kH = 0.01;
constexpr double kTau = 0.3;

EstimatorWindow<IoSample> window_of(double tau, const std::function<IoSample(double)>& signal, double t_end) {
    EstimatorWindow<IoSample> win(tau, kH);
    for (std::size_t j = 0; j < win.capacity(); ++j) win.push(signal(t_end - (win.capacity() - 1 - j) * kH));
    return win;
}

// Test-local RK4 of y' = F0 + u(t), sampled every kH.
std::vector<double> integrate_constant_F(double F0, const std::function<double(double)>& u, std::size_t samples) {
    std::vector<double> y(samples);
    double state = 0.0, t = 0.0;
    const double dt = kH / 10.0;
    auto f = [&](double tt) { return F0 + u(tt); };
    for (std::size_t k = 0; k < samples; ++k) {
        y[k] = state;
        for (int i = 0; i < 10; ++i) {
            const double k1 = f(t), k2 = f(t + dt / 2), k3 = f(t + dt / 2), k4 = f(t + dt);
            state += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            t += dt;
        }
        t = (k + 1) * kH;
    }
    return y;
}

}  // namespace

TEST_CASE("window length and quadrature") {
    CHECK(window_intervals(0.3, 0.01) == 30);
    CHECK(window_intervals(0.305, 0.01) == 31);
    CHECK(window_intervals(0.001, 0.01) == 1);
    CHECK_THROWS_AS(window_intervals(0.0, 0.01), ConfigError);

    // Exact on cubics for every interval count >= 2.
    for (std::size_t n = 2; n <= 13; ++n) {
        const double h = 0.1;
        const auto w = quadrature_weights(n, h);
        const double L = n * h;
        double acc = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double s = j * h;
            acc += w[j] * (1.0 - 2.0 * s + 3.0 * s * s - 4.0 * s * s * s);
        }
        CHECK(acc == doctest::Approx(L - L * L + L * L * L - L * L * L * L).epsilon(1e-12));
    }
}

TEST_CASE("ring buffer keeps the newest samples in order") {
    EstimatorWindow<IoSample> win(0.03, kH);
    CHECK(win.capacity() == 4);
    for (int i = 0; i < 11; ++i) win.push({static_cast<double>(i), 0.0});
    CHECK(win.full());
    for (std::size_t j = 0; j < win.size(); ++j) CHECK(win[j].y == 7.0 + j);
    win.clear();
    CHECK(win.size() == 0);
}

TEST_CASE("integral estimator warms up to zero") {
    EstimatorWindow<IoSample> win(kTau, kH);
    for (std::size_t i = 0; i + 1 < win.capacity(); ++i) {
        win.push({static_cast<double>(i), 1.0});
        const auto est = estimate_F_integral(win, 1.0);
        CHECK_FALSE(est.ready);
        CHECK(est.value == 0.0);
    }
    win.push({1.0, 1.0});
    CHECK(estimate_F_integral(win, 1.0).ready);
}

TEST_CASE("integral estimator examples") {
    auto constant = window_of(kTau, [](double) { return IoSample{3.7, 0.0}; }, 5.0);
    CHECK(std::abs(estimate_F_integral(constant, 1.0).value) < 1e-12);

    for (double tau : {0.05, 0.07, 0.3, 1.0}) {
        auto ramp = window_of(tau, [](double t) { return IoSample{t, 0.0}; }, 4.0);
        CHECK(estimate_F_integral(ramp, 1.0).value == doctest::Approx(1.0).epsilon(1e-10));
        auto driven = window_of(tau, [](double t) { return IoSample{t, 1.0}; }, 4.0);
        CHECK(std::abs(estimate_F_integral(driven, 1.0).value) < 1e-10);
    }
}

TEST_CASE("integral estimator annihilates constant offsets") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    std::vector<IoSample> samples(31);
    for (auto& s : samples) s = {n01(rng), n01(rng)};
    EstimatorWindow<IoSample> a(kTau, kH), b(kTau, kH);
    for (const auto& s : samples) {
        a.push(s);
        b.push({s.y + 2.5, s.u});
    }
    CHECK(std::abs(estimate_F_integral(a, 1.3).value - estimate_F_integral(b, 1.3).value) < 1e-12);
}

TEST_CASE("closed-loop estimator examples") {
    EstimatorWindow<LoopSample> win(kTau, kH);
    CHECK_FALSE(estimate_F_closedloop(win, 1.0, 1.0).ready);
    for (std::size_t i = 0; i < win.capacity(); ++i) win.push({0.0, -1.0, 0.0});
    CHECK(estimate_F_closedloop(win, 1.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));

    EstimatorWindow<LoopSample> zeros(kTau, kH);
    for (std::size_t i = 0; i < zeros.capacity(); ++i) zeros.push({0.0, 0.0, 0.0});
    CHECK(estimate_F_closedloop(zeros, 1.0, 1.0).value == 0.0);

    EstimatorWindow<LoopSample> ramp(kTau, kH);
    for (std::size_t i = 0; i < ramp.capacity(); ++i) ramp.push({1.0, 0.0, 0.0});
    CHECK(estimate_F_closedloop(ramp, 1.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integral estimator recovers a constant F from sampled data") {
    const auto u = [](double t) { return std::sin(t); };
    for (double F0 : {-2.0, 0.0, 3.0}) {
        const auto y = integrate_constant_F(F0, u, 3001);
        EstimatorWindow<IoSample> win(kTau, kH);
        double worst = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            win.push({y[k], u(k * kH)});
            if (win.full()) worst = std::max(worst, std::abs(estimate_F_integral(win, 1.0).value - F0));
        }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("estimator noise spread follows the kernel's noise gain") {
    // For white measurement noise of std s, F_est has std s * (6/tau^3) * sqrt(sum_j (w_j (tau - 2 sigma_j))^2).
    const double noise_std = 0.01;
    const auto w = quadrature_weights(30, kH);
    double gain2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) gain2 += std::pow(w[j] * (kTau - 2.0 * j * kH), 2);
    const double predicted = noise_std * 6.0 / std::pow(kTau, 3) * std::sqrt(gain2);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> noise(0.0, noise_std);
    EstimatorWindow<IoSample> win(kTau, kH);
    std::vector<double> est;
    for (int k = 0; k < 200000; ++k) {
        win.push({noise(rng), 0.0});
        if (win.full()) est.push_back(estimate_F_integral(win, 1.0).value);
    }
    double ss = 0.0;
    for (double v : est) ss += v * v;
    const double measured = std::sqrt(ss / est.size());
    CHECK(measured == doctest::Approx(predicted).epsilon(0.03));
    // About 0.023 at tau = 0.3 s, h = 10 ms: well above 0.02.
    CHECK(predicted > 0.02);
}

TEST_CASE("both estimators agree inside the same iP loop") {
    // Loop closed on y' = F0 + u with the iP fed by the integral estimator; the
    // closed-loop formula runs alongside as a monitor on the same data.
    for (double F0 : {-2.0, 0.0, 3.0}) {
        const double alpha = 1.0, K_P = 1.0;
        EstimatorWindow<IoSample> io(kTau, kH);
        EstimatorWindow<LoopSample> loop(kTau, kH);
        double y = 0.0, prev_u = 0.0, worst = 0.0;
        for (int k = 0; k < 3000; ++k) {
            const double t = k * kH;
            const double ystar = 1.0 + 0.5 * std::sin(t), ystar_dot = 0.5 * std::cos(t);
            const double e = y - ystar;
            io.push({y, prev_u});
            const auto f_io = estimate_F_integral(io, alpha);
            const auto f_loop = estimate_F_closedloop(loop, alpha, K_P);
            const double u = ip_step({1, alpha, f_io.value}, ystar_dot, e, K_P);
            loop.push({ystar_dot, u, e});
            if (t > 1.0) {
                REQUIRE(f_io.ready);
                REQUIRE(f_loop.ready);
                worst = std::max(worst, std::abs(f_io.value - f_loop.value));
            }
            y += kH * (F0 + alpha * u);  // exact for piecewise-constant input
            prev_u = u;
        }
        CHECK(worst < 1e-2);
    }
}
