#pragma once

#include <stdexcept>
#include <string>

namespace minexp {

enum class ErrorCode {
  InvalidArgument,
  RankDeficient,
  NumericalFailure,
  InvalidDegree,
  InvalidEpsilon,
  TooLarge,
  NotConstantColumnSum,
  InsufficientZeros,
  DegenerateSplit,
  OutOfDomain,
  NoFeasibleMu,
  NoFeasibleAlpha,
  FormatError,
  ChecksumMismatch,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minexp
