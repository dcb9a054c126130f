#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dinls {

enum class ErrorCode {
  DimensionOutOfRange,
  CouplingZero,
  ExponentOutOfRange,
  BadGridSpec,
  LengthMismatch,
  NonFiniteSample,
  NonPositiveMass,
  NotABlowupRegime,
  NoContraction,
  HypothesisNotSatisfied,
  BadSolverConfig,
  PreconditionFailed,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dinls
