#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chyp/sampling.hpp"

namespace chyp {

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  int pass = 0, fail = 0;
  double worst = 0;     // largest error statistic seen (suite specific)
  double seconds = 0;
  std::vector<std::string> messages;  // first few failures
};

const std::vector<std::string>& suite_names();

// Sample i uses a Sampler seeded with derive_seed(seed, i).
SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed);

// Null quadruple on one chain: the boundary of a complex geodesic moved by g.
std::array<Vec4, 4> chain_quadruple(Sampler& s);
// Four independent random null vectors.
std::array<Vec4, 4> random_quadruple(Sampler& s);

}  // namespace chyp
