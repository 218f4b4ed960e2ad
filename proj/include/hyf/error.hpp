#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyf {

enum class ErrorCode {
  NonMonotoneTimes,
  LengthMismatch,
  TooFewPoints,
  NonFiniteValue,
  CrossSeriesTie,
  LegConflict,
  MissingLeg,
  IndexOutOfRange,
  EmptyPattern,
  ZeroOverlaps,
  NonPositiveRate,
  InvalidConfig,
  RejectionBudgetExceeded,
  TooFewRuns,
  EmptyGrid,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can branch on the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Validation failures: the input violates a data-model invariant.
bool is_validation_error(ErrorCode code) noexcept;

}  // namespace hyf
