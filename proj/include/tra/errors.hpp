#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tra {

enum class ErrorCode {
  InvalidArgument = 1,
  ZeroOffDiagonal,
  InvalidFamilyParams,
  NoClosedForm,
  NumericalOverflow,
  IndexOutOfValidity,
  DomainError,
  RealityViolation,
  ScenarioRequiresA1Zero,
  ScenarioMismatch,
  DegenerateDenominator,
  NoFamilyApplies,
  AmbiguousRegion,
  IndexOutOfSpectrum,
  TruncationTooSmall,
  SingularPointTooClose,
  NoBoundStates,
  NoContinuum,
  BelowThreshold,
  MeshTooCoarse,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace tra
