#pragma once

#include <array>
#include <optional>
#include <string>

#include "chyp/invariants.hpp"

namespace chyp {

inline constexpr double kFixedPointAngle = 1e-8;
inline constexpr double kChainGap = 1e-8;
inline constexpr double kVanishingPairing = 1e-9;

std::optional<Vec4> common_fixed_point(const LoxodromicDecomposition& a,
                                       const LoxodromicDecomposition& b,
                                       double tol = kFixedPointAngle);

struct ChainTest {
  std::optional<Vec4> polar;  // positive vector polar to the common C²-chain
  double relative_gap;        // smallest / largest singular value
};

ChainTest common_c2_chain(const LoxodromicDecomposition& a, const LoxodromicDecomposition& b,
                          double tol = kChainGap);

struct NonSingularityReport {
  bool condition_i = false, condition_ii = false, condition_iii = false, overall = false;
  std::optional<Vec4> shared_fixed_point;
  std::optional<Vec4> polar_vector;
  double chain_gap = 0;
  std::array<bool, 2> eta_nonzero{false, false}, nu_nonzero{false, false};
  std::string failed_condition() const;
};

NonSingularityReport is_nonsingular(const LoxodromicDecomposition& a,
                                    const LoxodromicDecomposition& b);
NonSingularityReport is_nonsingular(const GroupElement& a, const GroupElement& b);

enum class ReducibilityCase { XaXb, YaYb, YaXb, XaYb };
const char* reducibility_name(ReducibilityCase c);

struct ReducibilityWitness {
  Vec4 eigenvector;
  ReducibilityCase kind;
};

inline constexpr double kReducibilityTol = 1e-7;

std::optional<ReducibilityWitness> reducibility_witness(const LoxodromicDecomposition& a,
                                                        const LoxodromicDecomposition& b,
                                                        double tol = kReducibilityTol);

}  // namespace chyp
