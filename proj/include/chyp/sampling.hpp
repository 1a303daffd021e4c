#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "chyp/gluing.hpp"
#include "chyp/nonsingular.hpp"

namespace chyp {

struct SamplerConfig {
  std::uint64_t seed = 42;
  double r_min = 1.1, r_max = 5.0;
  double angle_max = kPi;      // θ, φ uniform in [-angle_max, angle_max]
  double frame_spread = 1.0;   // half-width of the coordinate boxes
  double max_norm = 100.0;     // resample group elements above this Frobenius norm
  double min_unit_gap = 0.05;  // separation of the two unit eigenvalues
  int rejection_limit = 1000;
};

// Child seed for stream k (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Sampler {
 public:
  explicit Sampler(SamplerConfig cfg = {});

  const SamplerConfig& config() const { return cfg_; }
  std::mt19937_64& engine() { return rng_; }

  double uniform(double lo, double hi);
  Complex complex_in_box(double half_width);
  Vec4 random_vector(double half_width = 1.0);

  Vec4 random_null_vector();
  GroupElement random_group_element();
  GroupElement random_loxodromic();
  GroupElement random_loxodromic(double r, double theta, double phi);

  struct Pair {
    GroupElement a, b;
    int rejections;
  };
  Pair random_nonsingular_pair();

  // A null vector orthogonal to the unit positive vector v.
  Vec4 random_null_orthogonal_to(const Vec4& v);
  // Group element whose column `slot` (1 or 2) is v.
  GroupElement frame_with_positive(const Vec4& v, int slot);

  struct PlantedPair {
    GroupElement a, b;
    Vec4 eigenline;
    ReducibilityCase kind;
  };
  PlantedPair planted_reducible_pair(ReducibilityCase kind);

 private:
  SamplerConfig cfg_;
  std::mt19937_64 rng_;
};

// Tighter boxes for synthetic surfaces: products of many generators lose digits fast.
SamplerConfig surface_config(std::uint64_t seed);

// Pants records and twists for a representation built so that every boundary matches.
SurfaceInput synthetic_surface(int genus, Sampler& s);

}  // namespace chyp
