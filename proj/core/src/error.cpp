#include "qconf/error.hpp"

namespace qconf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::NearZeroDenominator: return "NearZeroDenominator";
    case ErrorCode::ZeroBase: return "ZeroBase";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorCode::QEqualsOne: return "QEqualsOne";
    case ErrorCode::ModulusQNotLessThanOne: return "ModulusQNotLessThanOne";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NearThetaZero: return "NearThetaZero";
    case ErrorCode::SpiralCut: return "SpiralCut";
    case ErrorCode::CoincidingEquivariantParameters: return "CoincidingEquivariantParameters";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::ResonantParameters: return "ResonantParameters";
    case ErrorCode::TruncationTooShort: return "TruncationTooShort";
    case ErrorCode::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case ErrorCode::SingularGauge: return "SingularGauge";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::PolesOnCommonSpiral: return "PolesOnCommonSpiral";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::JordanCaseUnsupported: return "JordanCaseUnsupported";
    case ErrorCode::DivergentCoefficient: return "DivergentCoefficient";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace qconf
