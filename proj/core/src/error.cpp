#include "midpoint/error.hpp"

namespace midpoint {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::unsupported_norm: return "unsupported-norm";
    case ErrorCode::invalid_schedule: return "invalid-schedule";
    case ErrorCode::ill_posed: return "ill-posed";
    case ErrorCode::inner_budget_exceeded: return "inner-budget-exceeded";
    case ErrorCode::power_cap_exceeded: return "power-cap-exceeded";
    case ErrorCode::singular_system: return "singular-system";
    case ErrorCode::rejected_sample: return "rejected-sample";
    case ErrorCode::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<long> iteration) {
  std::string out(to_string(code));
  if (iteration) out += " at n=" + std::to_string(*iteration);
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<long> iteration)
    : std::runtime_error(decorate(code, message, iteration)),
      code_(code),
      iteration_(iteration) {}

}  // namespace midpoint
