#include "mfc/estimators.hpp"

#include <cmath>

namespace mfc {

std::size_t window_intervals(double tau, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("estimator sampling period must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("estimator window length must be positive");
    const double ratio = tau / h;
    const double nearest = std::round(ratio);
    const double n = std::abs(ratio - nearest) < 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(ratio);
    return static_cast<std::size_t>(std::max(1.0, n));
}

std::vector<double> quadrature_weights(std::size_t intervals, double h) {
    if (intervals == 0) throw ConfigError("quadrature needs at least one interval");
    std::vector<double> w(intervals + 1, 0.0);
    if (intervals == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    // Simpson over an even prefix, 3/8 rule over the last three intervals if odd.
    const std::size_t simpson = intervals % 2 == 0 ? intervals : intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson != intervals) {
        const std::size_t i = simpson;
        w[i] += 3.0 * h / 8.0;
        w[i + 1] += 9.0 * h / 8.0;
        w[i + 2] += 9.0 * h / 8.0;
        w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
}

FEstimate estimate_F_integral(const EstimatorWindow<IoSample>& win, double alpha) {
    if (!win.full()) return {};
    const auto w = quadrature_weights(win.intervals(), win.h());
    const double tau = win.span();
    double acc = 0.0;
    for (std::size_t j = 0; j < win.size(); ++j) {
        const double s = static_cast<double>(j) * win.h();
        const IoSample& smp = win[j];
        acc += w[j] * ((tau - 2.0 * s) * smp.y + alpha * s * (tau - s) * smp.u);
    }
    return {-6.0 / (tau * tau * tau) * acc, true};
}

FEstimate estimate_F_closedloop(const EstimatorWindow<LoopSample>& win, double alpha, double K_P) {
    if (!win.full()) return {};
    const auto w = quadrature_weights(win.intervals(), win.h());
    double acc = 0.0;
    for (std::size_t j = 0; j < win.size(); ++j) {
        const LoopSample& smp = win[j];
        acc += w[j] * (smp.ystar_dot - alpha * smp.u - K_P * smp.e);
    }
    return {acc / win.span(), true};
}

}  // namespace mfc
