#include "minexp/error.hpp"

namespace minexp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotConstantColumnSum: return "NotConstantColumnSum";
    case ErrorCode::InsufficientZeros: return "InsufficientZeros";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoFeasibleMu: return "NoFeasibleMu";
    case ErrorCode::NoFeasibleAlpha: return "NoFeasibleAlpha";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
  }
  return "Unknown";
}

}  // namespace minexp
