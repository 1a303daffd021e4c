#pragma once

#include <optional>
#include <string>

#include "chyp/invariants.hpp"
#include "chyp/nonsingular.hpp"

namespace chyp {

struct RealizeOptions {
  double tol = kDefaultTol;
  bool allow_real_locus = false;
};

// Lifts with z2 = ∞ = e1 and z3 = o = e4 fixed:
//   z1 = (1, h, 0, δ1), z4 = (ξ4, p, q, X1), <z4,z1> = 1, h, q ≥ 0 real, |δ1| = sqrt|X2|.
struct RealizedQuadruple {
  Vec4 z1, z2, z3, z4;
  double q_squared;  // inequality slack / h^2
};

RealizedQuadruple realize_quadruple(const CrossRatioTriple& x, RealizeOptions opt = {});

enum class ReconstructionMethod { Direct, Refined };
const char* method_name(ReconstructionMethod m);

struct CanonicalPair {
  GroupElement A, B;
  double residual;  // largest relative mismatch of the recomputed record
  ReconstructionMethod method;
  int iterations = 0;
};

struct ReconstructOptions {
  double tol = kDefaultTol;
  bool allow_real_locus = false;
  double refine_threshold = 1e-9;  // relative mismatch that triggers refinement
  double accept = 1e-6;            // mismatch above this after refinement is NoConvergence
  bool force_refine = false;
  int max_iterations = 200;
};

// The pair built directly by the closed-form pipeline, no refinement.
std::pair<GroupElement, GroupElement> direct_pair_from_invariants(const PairInvariants& p,
                                                                  ReconstructOptions opt = {});

// Conjugates B by exp(Y), Y in su(3,1), to minimize the invariant mismatch against p.
CanonicalPair refine_pair(const PairInvariants& p, const GroupElement& a, const GroupElement& b0,
                          ReconstructOptions opt = {});

CanonicalPair canonical_pair_from_invariants(const PairInvariants& p, ReconstructOptions opt = {});

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<GroupElement> conjugator;
  double parameter_mismatch = 0;
  double residual = 0;  // max(||CAC^-1 - A2||, ||CBC^-1 - B2||) relative
};

ConjugacyResult pairs_conjugate(const GroupElement& a, const GroupElement& b,
                                const GroupElement& a2, const GroupElement& b2,
                                double tol = 1e-6);

}  // namespace chyp
