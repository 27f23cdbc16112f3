#include "tra/errors.hpp"

namespace tra {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::InvalidFamilyParams: return "InvalidFamilyParams";
    case ErrorCode::NoClosedForm: return "NoClosedForm";
    case ErrorCode::NumericalOverflow: return "NumericalOverflow";
    case ErrorCode::IndexOutOfValidity: return "IndexOutOfValidity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RealityViolation: return "RealityViolation";
    case ErrorCode::ScenarioRequiresA1Zero: return "ScenarioRequiresA1Zero";
    case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NoFamilyApplies: return "NoFamilyApplies";
    case ErrorCode::AmbiguousRegion: return "AmbiguousRegion";
    case ErrorCode::IndexOutOfSpectrum: return "IndexOutOfSpectrum";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::SingularPointTooClose: return "SingularPointTooClose";
    case ErrorCode::NoBoundStates: return "NoBoundStates";
    case ErrorCode::NoContinuum: return "NoContinuum";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace tra
