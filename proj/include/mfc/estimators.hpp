/**
 * @file estimators.hpp
 * @brief Sliding-window estimators of F in the first-order ultra-local model.
 *
 * F is assumed constant over a short window of length tau. Samples are kept
 * in a fixed-capacity ring buffer and integrals are evaluated with composite
 * Simpson weights on the uniform grid (3/8 rule on the tail for an odd
 * interval count).
 */
#pragma once

#include <cstddef>
#include <vector>

#include "mfc/errors.hpp"

namespace mfc {

/// Number of sampling intervals covering tau: ceil(tau/h), tolerant to rounding in tau/h.
std::size_t window_intervals(double tau, double h);

/// Composite Newton-Cotes weights for @p intervals uniform intervals of width @p h.
std::vector<double> quadrature_weights(std::size_t intervals, double h);

/// (y, u) pair for the integral estimator.
struct IoSample {
    double y = 0.0;
    double u = 0.0;
};

/// (y*', u, e) triple for the closed-loop estimator.
struct LoopSample {
    double ystar_dot = 0.0;
    double u = 0.0;
    double e = 0.0;
};

/// Chronologically ordered ring buffer of the last intervals+1 samples.
template <class Sample>
class EstimatorWindow {
public:
    EstimatorWindow(double tau, double h)
        : h_(h), intervals_(window_intervals(tau, h)), buffer_(intervals_ + 1) {}

    void push(const Sample& s) {
        buffer_[head_] = s;
        head_ = (head_ + 1) % buffer_.size();
        if (count_ < buffer_.size()) ++count_;
    }

    void clear() noexcept {
        head_ = 0;
        count_ = 0;
    }

    bool full() const noexcept { return count_ == buffer_.size(); }
    std::size_t size() const noexcept { return count_; }
    std::size_t capacity() const noexcept { return buffer_.size(); }
    std::size_t intervals() const noexcept { return intervals_; }
    double h() const noexcept { return h_; }
    /// Window length actually covered by the grid: intervals * h.
    double span() const noexcept { return static_cast<double>(intervals_) * h_; }

    /// i = 0 is the oldest retained sample.
    const Sample& operator[](std::size_t i) const {
        const std::size_t oldest = (head_ + buffer_.size() - count_) % buffer_.size();
        return buffer_[(oldest + i) % buffer_.size()];
    }

private:
    double h_;
    std::size_t intervals_;
    std::vector<Sample> buffer_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
};

struct FEstimate {
    double value = 0.0;
    bool ready = false;  ///< false while the window is warming up; value is then 0
};

/**
 * @brief Algebraic integral estimate
 *
 *   F = -(6/tau^3) * int_0^tau [ (tau - 2s) y + alpha s (tau - s) u ] ds
 *
 * where s is the window-local time, s = 0 at the oldest sample.
 */
FEstimate estimate_F_integral(const EstimatorWindow<IoSample>& win, double alpha);

/// Window mean of (y*' - alpha u - K_P e).
FEstimate estimate_F_closedloop(const EstimatorWindow<LoopSample>& win, double alpha, double K_P);

}  // namespace mfc
