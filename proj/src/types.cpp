#include "chyp/types.hpp"

#include <cmath>

namespace chyp {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NotInClosedDomain: return "NotInClosedDomain";
    case ErrorCode::NotNegative: return "NotNegative";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NearBoundaryAmbiguous: return "NearBoundaryAmbiguous";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
    case ErrorCode::NotLoxodromic: return "NotLoxodromic";
    case ErrorCode::DegenerateUnitEigenvalues: return "DegenerateUnitEigenvalues";
    case ErrorCode::NearParabolic: return "NearParabolic";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::RealCrossRatioCase: return "RealCrossRatioCase";
    case ErrorCode::SharedFixedPoint: return "SharedFixedPoint";
    case ErrorCode::NoValidAlpha: return "NoValidAlpha";
    case ErrorCode::NoValidBeta: return "NoValidBeta";
    case ErrorCode::NotNonSingular: return "NotNonSingular";
    case ErrorCode::UndefinedInvariant: return "UndefinedInvariant";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::OffVariety: return "OffVariety";
    case ErrorCode::RealCrossRatioLocus: return "RealCrossRatioLocus";
    case ErrorCode::NotNonSingularResult: return "NotNonSingularResult";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::IncompatibleBoundary: return "IncompatibleBoundary";
    case ErrorCode::PeripheralNotLoxodromic: return "PeripheralNotLoxodromic";
    case ErrorCode::BudgetMismatch: return "BudgetMismatch";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::ResampleExhausted: return "ResampleExhausted";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NearBoundaryAmbiguous:
    case ErrorCode::NearParabolic:
    case ErrorCode::NoConvergence:
    case ErrorCode::NotNonSingularResult:
    case ErrorCode::ReconstructionFailure:
    case ErrorCode::ResampleExhausted:
    case ErrorCode::DegenerateUnitEigenvalues:
      return false;
    default:
      return true;
  }
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

}  // namespace chyp
