#pragma once

#include <array>
#include <vector>

#include "chyp/reconstruction.hpp"

namespace chyp {

struct TwistBend {
  Complex kappa;
  double psi;
};

// K = Q E(κ,ψ) Q^-1 with Q the frame of A.
GroupElement twist_bend_element(const LoxodromicDecomposition& a, Complex kappa, double psi);
GroupElement twist_bend_element(const GroupElement& a, const TwistBend& t);

struct TildeInvariants {
  Complex X1, X2, beta1, beta2;
};

// X̃1 = [a_B,a_A,r_A,K r_C], X̃2 = [a_B,r_A,a_A,K r_C], β̃i = [K r_C, a_B, x_A|y_A, a_A]
TildeInvariants tilde_invariants(const GroupElement& a, const GroupElement& b,
                                 const GroupElement& c, const TwistBend& k,
                                 double tol = kDefaultTol);

// Recovers (κ,ψ) from X̃1, X̃2 and β̃_index. Im κ is returned in (-π/4, π/4] since
// the twist is only defined up to the center.
TwistBend invert_tilde_invariants(const GroupElement& a, const GroupElement& b,
                                  const GroupElement& c, const TildeInvariants& t,
                                  int beta_index = 1);

struct PantsGroup {
  GroupElement A, B;
  PairInvariants invariants;
  std::array<TraceInvariants, 3> peripheral;  // A, B, B^-1 A^-1

  static PantsGroup make(const GroupElement& a, const GroupElement& b, double tol = kDefaultTol);
};

struct FourHoledGroup {
  std::array<GroupElement, 3> generators;   // A, B, K C K^-1
  std::array<GroupElement, 4> peripherals;  // B, B^-1A^-1, K C K^-1, K D^-1 C^-1 K^-1
  PairInvariants first, second;
  TwistBend twist;
  GroupElement K;
  int parameter_count = 30;
};

inline constexpr double kCompatibilityTol = 1e-8;

// Whether Q is conjugate to P^-1 through (τ, σ).
bool inverse_compatible(const TraceInvariants& p, const TraceInvariants& q,
                        double tol = kCompatibilityTol);

FourHoledGroup attach_pants(const PantsGroup& p1, const PantsGroup& p2, const TwistBend& k,
                            double tol = kDefaultTol);

struct OneHandleGroup {
  GroupElement A, BK;
  GroupElement commutator;  // [A, BK]^-1 = (BK) A (BK)^-1 A^-1 side peripheral
  PairInvariants pants;     // of <A, B A^-1 B^-1>
  TwistBend twist;
  GroupElement K;
  int parameter_count = 15;
};

OneHandleGroup close_handle(const GroupElement& a, const GroupElement& b, const TwistBend& k,
                            double tol = kDefaultTol);

// Element B with B X^-1 B^-1 = Y for a handle pants <X, Y>, Y conjugate to X^-1.
GroupElement handle_conjugator(const GroupElement& x, const GroupElement& y);

struct SurfaceInput {
  int genus = 2;
  std::vector<PairInvariants> pants;  // g handle pants <X_i, Y_i>, then g-2 connectors <U_k, V_k>
  std::vector<TwistBend> twists;      // g handle twists, then 2g-3 connection twists
};

struct BudgetItem {
  const char* label;
  int count;     // objects
  int per_item;  // real parameters each (negative for constraints)
};

struct BudgetReport {
  int genus;
  std::vector<BudgetItem> items;
  int total() const;
};

BudgetReport parameter_budget(int genus);
BudgetReport consumed_budget(const SurfaceInput& in);

struct SurfaceRep {
  int genus;
  std::vector<PairInvariants> pants;
  std::vector<TwistBend> twists;
  // X_1, B_1, ..., X_g, B_g with Z_g ... Z_1 = I, Z_i = [B_i, X_i] = B_i X_i B_i^-1 X_i^-1
  std::vector<GroupElement> generators;
  double relation_residual;  // distance of Z_g ... Z_1 to the nearest central element
  Complex relation_center;
  double relation_relative;  // same, relative to the size of the factors
  BudgetReport budget;
  std::vector<double> curve_mismatch;  // per-curve (τ, σ) compatibility mismatch
};

struct AssembleOptions {
  double tol = kDefaultTol;
  double compatibility_tol = kCompatibilityTol;
  ReconstructOptions reconstruct;
};

SurfaceRep assemble_surface(const SurfaceInput& in, AssembleOptions opt = {});

// Distance of m to {±I, ±iI}; the nearest central element is stored in `center`.
double center_distance(const Mat4& m, Complex* center = nullptr);

}  // namespace chyp
