/**
 * @file signals.hpp
 * @brief Reference trajectories, exogenous perturbations and measurement noise.
 *
 * Everything here is evaluable at an arbitrary time t >= 0. References carry
 * an analytic derivative because the intelligent controllers feed it forward.
 */
#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace mfc {

/// Value and time derivative of a signal at one instant.
struct SignalPoint {
    double value = 0.0;
    double derivative = 0.0;

    friend bool operator==(const SignalPoint&, const SignalPoint&) = default;
};

/**
 * @brief C1 transition from @p y0 to @p y1 over [t0, t1].
 *
 * Quintic smoothstep 6x^5 - 15x^4 + 10x^3 with x = (t - t0) / (t1 - t0);
 * value and derivative are continuous and the derivative vanishes at both ends.
 * Clamped to y0 before t0 and to y1 after t1.
 *
 * @throws ConfigError if t1 <= t0.
 */
SignalPoint smooth_connect(double y0, double y1, double t0, double t1, double t);

struct Setpoint {
    double level = 0.0;
};

struct SmoothConnect {
    double from_level = 0.0;
    double to_level = 0.0;
    double t0 = 0.0;
    double t1 = 1.0;
};

struct Sinusoid {
    double offset = 0.0;
    double amplitude = 0.0;
    double period = 1.0;
    double phase_origin = 0.0;
};

using SegmentShape = std::variant<Setpoint, SmoothConnect, Sinusoid>;

struct Segment {
    double start = 0.0;
    SegmentShape shape;
};

/// Evaluate a single segment shape, ignoring where the segment starts.
SignalPoint evaluate(const SegmentShape& shape, double t);

/**
 * @brief Piecewise reference y*(t) with analytic derivative.
 *
 * Segment i is active on [start_i, start_{i+1}); the last one extends to
 * infinity. The first segment must start at 0 and the concatenation must be
 * continuous in value (the derivative may jump, one-sided at boundaries).
 */
class ReferenceTrajectory {
public:
    /// @throws ConfigError on empty, unordered, non-zero-origin or discontinuous segment lists.
    explicit ReferenceTrajectory(std::vector<Segment> segments);

    static ReferenceTrajectory constant(double level);

    /// @throws DomainError if t < 0.
    SignalPoint at(double t) const;

    const std::vector<Segment>& segments() const noexcept { return segments_; }

private:
    std::vector<Segment> segments_;
};

/// Free-function form of ReferenceTrajectory::at.
inline SignalPoint reference_value(const ReferenceTrajectory& traj, double t) { return traj.at(t); }

struct NoPerturbation {};

/// amplitude * sin(2*pi/period * (t - onset)) for t >= onset, zero before.
struct SineOnset {
    double amplitude = 0.0;
    double period = 1.0;
    double onset = 0.0;
};

using PerturbationSpec = std::variant<NoPerturbation, SineOnset>;

double perturbation_value(const PerturbationSpec& spec, double t);

struct NoiseSpec {
    double std = 0.0;
    std::uint64_t seed = 1;
};

/**
 * @brief Deterministic white Gaussian noise stream.
 *
 * Box-Muller on a 64-bit Mersenne Twister. The stream is a pure function of
 * the seed. A zero standard deviation yields exact zeros without consuming
 * random numbers.
 */
class NoiseGenerator {
public:
    /// @throws ConfigError if spec.std is negative or not finite.
    explicit NoiseGenerator(const NoiseSpec& spec);

    double sample();

    const NoiseSpec& spec() const noexcept { return spec_; }

private:
    double uniform_open();

    NoiseSpec spec_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mfc
