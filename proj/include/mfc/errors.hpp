#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfc {

/// Bad argument or precondition on a pure function (e.g. negative time).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid construction or scenario configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Plant state became non-finite during integration.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double time, std::size_t sample = kNoSample);

    double time() const noexcept { return time_; }
    std::size_t sample() const noexcept { return sample_; }

    static constexpr std::size_t kNoSample = static_cast<std::size_t>(-1);

private:
    double time_;
    std::size_t sample_;
};

/// Controller produced a non-finite control value.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(std::size_t sample);

    std::size_t sample() const noexcept { return sample_; }

private:
    std::size_t sample_;
};

/// Log-linear fit over a window that contains (near) zero errors.
class IllConditionedFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mfc
