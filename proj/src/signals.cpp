#include "mfc/signals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kContinuityTol = 1e-9;

}  // namespace

SignalPoint smooth_connect(double y0, double y1, double t0, double t1, double t) {
    if (!(t1 > t0)) throw ConfigError("smooth_connect: window end must be after its start");
    if (t <= t0) return {y0, 0.0};
    if (t >= t1) return {y1, 0.0};
    const double span = t1 - t0;
    const double x = (t - t0) / span;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double shape = x3 * (10.0 + x * (-15.0 + 6.0 * x));
    const double slope = 30.0 * x2 * (1.0 - x) * (1.0 - x);
    const double dy = y1 - y0;
    return {y0 + dy * shape, dy * slope / span};
}

SignalPoint evaluate(const SegmentShape& shape, double t) {
    return std::visit(
        Overloaded{
            [](const Setpoint& s) { return SignalPoint{s.level, 0.0}; },
            [t](const SmoothConnect& s) { return smooth_connect(s.from_level, s.to_level, s.t0, s.t1, t); },
            [t](const Sinusoid& s) {
                const double w = 2.0 * std::numbers::pi / s.period;
                const double phase = w * (t - s.phase_origin);
                return SignalPoint{s.offset + s.amplitude * std::sin(phase), s.amplitude * w * std::cos(phase)};
            },
        },
        shape);
}

ReferenceTrajectory::ReferenceTrajectory(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw ConfigError("reference trajectory needs at least one segment");
    if (segments_.front().start != 0.0) throw ConfigError("first reference segment must start at t=0");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& seg = segments_[i];
        if (!std::isfinite(seg.start)) throw ConfigError("segment start must be finite");
        if (const auto* c = std::get_if<SmoothConnect>(&seg.shape); c && !(c->t1 > c->t0))
            throw ConfigError("smooth connection window end must be after its start");
        if (const auto* s = std::get_if<Sinusoid>(&seg.shape); s && !(s->period > 0.0))
            throw ConfigError("sinusoid period must be positive");
        if (i == 0) continue;
        const auto& prev = segments_[i - 1];
        if (!(seg.start > prev.start)) throw ConfigError("segment start times must be strictly increasing");
        const double left = evaluate(prev.shape, seg.start).value;
        const double right = evaluate(seg.shape, seg.start).value;
        if (std::abs(left - right) > kContinuityTol * std::max(1.0, std::abs(left)))
            throw ConfigError("reference is discontinuous at t=" + std::to_string(seg.start));
    }
}

ReferenceTrajectory ReferenceTrajectory::constant(double level) {
    return ReferenceTrajectory({Segment{0.0, Setpoint{level}}});
}

SignalPoint ReferenceTrajectory::at(double t) const {
    if (!(t >= 0.0)) throw DomainError("reference evaluated at negative time");
    // Last segment whose start is <= t.
    auto it = segments_.rbegin();
    while (it->start > t) ++it;
    return evaluate(it->shape, t);
}

double perturbation_value(const PerturbationSpec& spec, double t) {
    return std::visit(Overloaded{
                          [](const NoPerturbation&) { return 0.0; },
                          [t](const SineOnset& s) {
                              if (t < s.onset) return 0.0;
                              return s.amplitude * std::sin(2.0 * std::numbers::pi / s.period * (t - s.onset));
                          },
                      },
                      spec);
}

NoiseGenerator::NoiseGenerator(const NoiseSpec& spec) : spec_(spec), engine_(spec.seed) {
    if (!(spec.std >= 0.0) || !std::isfinite(spec.std)) throw ConfigError("noise std must be finite and >= 0");
}

double NoiseGenerator::uniform_open() {
    // 53 random bits mapped to (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseGenerator::sample() {
    if (spec_.std == 0.0) return 0.0;
    if (has_spare_) {
        has_spare_ = false;
        return spec_.std * spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return spec_.std * radius * std::cos(angle);
}

}  // namespace mfc
