#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace midpoint {

enum class ErrorCode {
  invalid_input,
  unsupported_norm,
  invalid_schedule,
  ill_posed,
  inner_budget_exceeded,
  power_cap_exceeded,
  singular_system,
  rejected_sample,
  insufficient_data,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. `iteration()` is set when the failure belongs to a
/// specific outer iteration n.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<long> iteration = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> iteration() const noexcept { return iteration_; }

 private:
  ErrorCode code_;
  std::optional<long> iteration_;
};

}  // namespace midpoint
