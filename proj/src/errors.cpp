#include "mfc/errors.hpp"

namespace mfc {

namespace {

std::string integration_message(double time, std::size_t sample) {
    std::string msg = "integration blew up at t=" + std::to_string(time);
    if (sample != IntegrationError::kNoSample) msg += " (sample " + std::to_string(sample) + ")";
    return msg;
}

}  // namespace

IntegrationError::IntegrationError(double time, std::size_t sample)
    : std::runtime_error(integration_message(time, sample)), time_(time), sample_(sample) {}

DivergenceError::DivergenceError(std::size_t sample)
    : std::runtime_error("controller output is not finite at sample " + std::to_string(sample)),
      sample_(sample) {}

}  // namespace mfc
