#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regret {

/// Every failure raised by the library carries one of these kinds. The CLI
/// maps them to exit codes and the HTTP layer maps them to status codes.
enum class ErrorKind {
  parameter,       // weighting-function shape parameter out of range
  domain,          // argument outside a function's domain
  level,           // membership not one of the five scale levels
  empty_response,  // all three memberships zero
  state,           // staircase / session used in the wrong phase
  protocol,        // response does not match the issued probe
  input,           // malformed or incomplete input data
  singular_ratio,  // w(p*) = 1 in the Q-chain recursion
  degenerate_metric,
  statistic,
  model,           // synthetic subject has no indifference point
  config,
  not_found,
  conflict,
  data,            // unreadable or inconsistent persisted data
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace regret
