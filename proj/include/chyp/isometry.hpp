#pragma once

#include <array>
#include <optional>
#include <vector>

#include "chyp/hermitian.hpp"

namespace chyp {

enum class IsometryKind { Elliptic, Parabolic, Loxodromic };
const char* kind_name(IsometryKind k);

struct IsometryClass {
  IsometryKind kind;
  std::array<Complex, 4> eigenvalues;  // sorted by modulus, descending
  double modulus_deviation;            // max ||λ| - 1|
  std::vector<Vec4> boundary_fixed;    // null eigenlines
  std::optional<Vec4> attracting, repelling;
  std::optional<Vec4> interior_fixed;  // a negative eigenvector, elliptic only
};

// Band for the modulus test: above 1e-5 loxodromic, below 1e-8 unit, in between ambiguous.
inline constexpr double kLoxodromicBand = 1e-5;
inline constexpr double kUnitBand = 1e-8;

IsometryClass classify_isometry(const GroupElement& a, double tol = kDefaultTol);

GroupElement normal_form(double r, double theta, double phi);
// E(λ,ψ) = diag(e^λ, e^{-iψ - i Im λ}, e^{iψ - i Im λ}, e^{-λ̄})
Mat4 normal_form_complex(Complex lambda, double psi);

struct LoxodromicDecomposition {
  double r, theta, phi;
  GroupElement frame;  // columns a, x, y, r
  double residual;
  // unit eigenvalues coincide: x, y are one choice of basis of the eigenplane
  bool degenerate_unit = false;

  Vec4 a() const { return frame.matrix().col(0); }
  Vec4 x() const { return frame.matrix().col(1); }
  Vec4 y() const { return frame.matrix().col(2); }
  Vec4 rep() const { return frame.matrix().col(3); }
  Mat4 normal() const { return normal_form(r, theta, phi).matrix(); }
  Mat4 rebuild() const;
};

inline constexpr double kNearParabolicGuard = 1e-6;
inline constexpr double kUnitEigenvalueGap = 1e-6;

LoxodromicDecomposition decompose_loxodromic(const GroupElement& a, double tol = kDefaultTol);

struct TraceInvariants {
  Complex tau;
  double sigma;
  double sigma_imag_residual;
};

TraceInvariants trace_invariants(const GroupElement& a);
TraceInvariants trace_invariants(const Mat4& a);

// Roots of X^4 - τX^3 + σX^2 - τ̄X + 1, sorted by modulus descending then argument.
std::array<Complex, 4> eigenvalues_from_invariants(Complex tau, double sigma);

struct LoxodromicParameters {
  double r, theta, phi;
};
// Applies the eigenvalue labeling convention to a spectrum.
LoxodromicParameters loxodromic_parameters(const std::array<Complex, 4>& eig);

bool loxodromic_conjugate(const GroupElement& a, const GroupElement& b, double tol = kDefaultTol);

bool is_loxodromic(const GroupElement& a, double tol = kDefaultTol);

}  // namespace chyp
