#pragma once

#include <array>
#include <optional>

#include "chyp/isometry.hpp"

namespace chyp {

// [z1,z2,z3,z4] = <z3,z1><z4,z2> / (<z4,z1><z3,z2>)
Complex cross_ratio(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                    double tol = kDefaultTol);

struct CrossRatioTriple {
  Complex X1, X2, X3;
  double variety_residual;  // ||X2| - |X1||X3||
  double inequality_slack;  // 2|X1|^2 Re X3 - (|X1|^2 + |X2|^2 + 1 - 2 Re(X1+X2))
  bool equality_case;       // slack within tol
  double scale() const;     // magnitude used to make the checks relative
};

CrossRatioTriple make_triple(Complex x1, Complex x2, Complex x3, double tol = kDefaultTol);

CrossRatioTriple cross_ratio_triple(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                                    double tol = kDefaultTol);

double cartan_invariant(const Vec4& z1, const Vec4& z2, const Vec4& z3, double tol = kDefaultTol);

struct AngleRelations {
  double sum_residual;         // A1 + A2 - arg(conj(X1) X2), mod 2π
  double difference_residual;  // A1 - A2 - arg(X3), mod 2π
  bool near_real_warning;
};

// A1 = A(z4,z3,z2), A2 = A(z3,z2,z1).
AngleRelations angle_relations(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                               double tol = kDefaultTol);

struct ProjectiveValue {
  Complex num, den;
  bool is_infinite(double tol = 1e-9) const;
  bool is_zero(double tol = 1e-9) const;
  Complex value() const { return num / den; }
};

// η(a,r;x) = <a,x><x,r> / (<a,r><x,x>)
Complex eta(const Vec4& a, const Vec4& r, const Vec4& x);

struct EtaSet {
  Complex eta1, eta2, nu1, nu2;
  ProjectiveValue zeta0;
};

EtaSet eta_invariants(const LoxodromicDecomposition& a, const LoxodromicDecomposition& b,
                      double tol = kDefaultTol);

struct AlphaBeta {
  std::array<std::optional<Complex>, 2> alpha, beta;
  int chosen_alpha = 0, chosen_beta = 0;  // 1 or 2
};

AlphaBeta alpha_beta_invariants(const LoxodromicDecomposition& a, const LoxodromicDecomposition& b,
                                double tol = kDefaultTol);

struct PairInvariants {
  Complex tauA, tauB;
  double sigmaA, sigmaB;
  CrossRatioTriple cross_ratios;
  int alpha_index;
  Complex alpha;
  int beta_index;
  Complex beta;
};

struct IndexChoice {
  int alpha = 0, beta = 0;  // 0 picks the smallest valid index
};

PairInvariants pair_invariants(const GroupElement& a, const GroupElement& b, IndexChoice idx = {},
                               double tol = kDefaultTol);
PairInvariants pair_invariants(const LoxodromicDecomposition& a, const LoxodromicDecomposition& b,
                               IndexChoice idx = {}, double tol = kDefaultTol);

// X1 = [a_B,a_A,r_A,r_B], X2 = [a_B,r_A,a_A,r_B], X3 = [a_A,r_A,a_B,r_B]
CrossRatioTriple pair_cross_ratios(const LoxodromicDecomposition& a,
                                   const LoxodromicDecomposition& b, double tol = kDefaultTol);

std::array<double, 4> identity_relations(const LoxodromicDecomposition& a,
                                         const LoxodromicDecomposition& b,
                                         double tol = kDefaultTol);

enum class Coplanarity { Chain, TotallyReal, Generic };
const char* coplanarity_name(Coplanarity c);

Coplanarity coplanarity_classify(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                                 double tol = 1e-9);

// Relative distance |p - q| / max(1, |p|).
double rel_diff(Complex p, Complex q);
// Largest relative mismatch between two records (indices must agree).
double max_mismatch(const PairInvariants& p, const PairInvariants& q);

}  // namespace chyp
