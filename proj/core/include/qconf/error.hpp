#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qconf {

/// Every failure the library reports carries one of these codes.  The CLI
/// maps them onto its exit-code contract, so the set is append-only.
enum class ErrorCode {
  InvalidArgument,
  MissingVariable,
  NearZeroDenominator,
  ZeroBase,
  FieldMismatch,
  NonUnitLeadingCoefficient,
  QEqualsOne,
  ModulusQNotLessThanOne,
  WindowTooSmall,
  NearThetaZero,
  SpiralCut,
  CoincidingEquivariantParameters,
  DegenerateBasis,
  ResonantParameters,
  TruncationTooShort,
  LeadingCoefficientVanishes,
  SingularGauge,
  ZeroScale,
  PolesOnCommonSpiral,
  NoConvergence,
  JordanCaseUnsupported,
  DivergentCoefficient,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace qconf
