#include <gtest/gtest.h>

#include <set>

#include "chyp/sampling.hpp"
#include "oracle.hpp"

using namespace chyp;

TEST(Sampler, SameSeedSameStream) {
  SamplerConfig cfg;
  cfg.seed = 1234;
  Sampler s1(cfg), s2(cfg);
  for (int k = 0; k < 20; ++k) {
    EXPECT_EQ(s1.random_group_element().matrix(), s2.random_group_element().matrix());
    EXPECT_EQ(s1.random_null_vector(), s2.random_null_vector());
  }
  auto p1 = s1.random_nonsingular_pair(), p2 = s2.random_nonsingular_pair();
  EXPECT_EQ(p1.a.matrix(), p2.a.matrix());
  EXPECT_EQ(p1.b.matrix(), p2.b.matrix());
}

TEST(Sampler, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(42, k));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));

  SamplerConfig c1, c2;
  c1.seed = derive_seed(7, 0);
  c2.seed = derive_seed(7, 1);
  Sampler a(c1), b(c2);
  EXPECT_NE(a.random_null_vector(), b.random_null_vector());
}

TEST(Sampler, NullVectorsAreNull) {
  Sampler s;
  for (int k = 0; k < 200; ++k) {
    Vec4 v = s.random_null_vector();
    EXPECT_LT(std::abs(oracle::form(v, v)), 1e-12 * v.squaredNorm());
    EXPECT_GT(v.norm(), 0);
  }
}

TEST(Sampler, GroupElementsPreserveForm) {
  Sampler s;
  for (int k = 0; k < 200; ++k) {
    auto g = s.random_group_element();
    EXPECT_LT(oracle::form_residual(g.matrix()), 1e-9);
    EXPECT_LT(std::abs(g.matrix().determinant() - 1.0), 1e-9);
    EXPECT_LE(g.matrix().norm(), s.config().max_norm);
  }
}

TEST(Sampler, LoxodromicsInRange) {
  Sampler s;
  for (int k = 0; k < 100; ++k) {
    auto g = s.random_loxodromic();
    EXPECT_TRUE(is_loxodromic(g));
    auto f = oracle::eigenframe(g.matrix());
    double r = std::abs(f.lambda[0]);
    EXPECT_GE(r, s.config().r_min - 1e-8);
    EXPECT_LE(r, s.config().r_max + 1e-8);
    EXPECT_GE(std::abs(f.lambda[1] - f.lambda[2]), s.config().min_unit_gap - 1e-8);
  }
}

TEST(Sampler, FrameWithPositiveColumn) {
  Sampler s;
  for (int slot = 1; slot <= 2; ++slot)
    for (int k = 0; k < 20; ++k) {
      Vec4 v = s.random_vector();
      double q = oracle::form(v, v).real();
      if (q <= 0.1) continue;
      v /= std::sqrt(q);
      auto c = s.frame_with_positive(v, slot);
      EXPECT_LT(oracle::form_residual(c.matrix()), 1e-9);
      EXPECT_LT(oracle::line_angle(c.matrix().col(slot), v), 1e-9);
    }
}

TEST(Sampler, NullOrthogonal) {
  Sampler s;
  Vec4 v = oracle::e(1);
  for (int k = 0; k < 20; ++k) {
    Vec4 z = s.random_null_orthogonal_to(v);
    EXPECT_LT(std::abs(oracle::form(z, z)), 1e-12 * z.squaredNorm());
    EXPECT_LT(std::abs(oracle::form(z, v)), 1e-12 * z.norm());
  }
}

TEST(Sampler, NonsingularPairs) {
  Sampler s;
  for (int k = 0; k < 50; ++k) {
    auto p = s.random_nonsingular_pair();
    EXPECT_TRUE(is_nonsingular(p.a, p.b).overall);
    EXPECT_GE(p.rejections, 0);
  }
}

TEST(Sampler, SyntheticSurfaceCounts) {
  for (int g = 2; g <= 4; ++g) {
    Sampler s(surface_config(derive_seed(3, g)));
    auto in = synthetic_surface(g, s);
    EXPECT_EQ(in.genus, g);
    EXPECT_EQ((int)in.pants.size(), 2 * g - 2);
    EXPECT_EQ((int)in.twists.size(), 3 * g - 3);
    EXPECT_EQ(consumed_budget(in).total(), 30 * g - 30);
    auto rep = assemble_surface(in);
    EXPECT_LT(rep.relation_relative, 1e-6);
  }
}
