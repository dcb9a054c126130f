#include "dinls/error.hpp"

namespace dinls {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::CouplingZero: return "CouplingZero";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::BadGridSpec: return "BadGridSpec";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NotABlowupRegime: return "NotABlowupRegime";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorCode::BadSolverConfig: return "BadSolverConfig";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dinls
