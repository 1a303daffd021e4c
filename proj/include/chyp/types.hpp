#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace chyp {

using Complex = std::complex<double>;
using Vec4 = Eigen::Matrix<Complex, 4, 1>;
using Mat4 = Eigen::Matrix<Complex, 4, 4>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  ZeroVector,
  NotInGroup,
  NotInClosedDomain,
  NotNegative,
  DegenerateSpan,
  DegeneratePair,
  NearBoundaryAmbiguous,
  OutOfRegion,
  NotLoxodromic,
  DegenerateUnitEigenvalues,
  NearParabolic,
  DegeneratePairing,
  RealCrossRatioCase,
  SharedFixedPoint,
  NoValidAlpha,
  NoValidBeta,
  NotNonSingular,
  UndefinedInvariant,
  Inconsistent,
  OffVariety,
  RealCrossRatioLocus,
  NotNonSingularResult,
  NoConvergence,
  IncompatibleBoundary,
  PeripheralNotLoxodromic,
  BudgetMismatch,
  ReconstructionFailure,
  ResampleExhausted,
  ParseError,
};

const char* error_name(ErrorCode c);

// Validation errors are caused by bad input; the rest are numerical failures.
bool is_validation_error(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// wraps to (-pi, pi]
double wrap_angle(double a);

}  // namespace chyp
