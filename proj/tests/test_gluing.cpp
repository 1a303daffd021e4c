#include <gtest/gtest.h>

#include <cmath>

#include "chyp/gluing.hpp"
#include "chyp/sampling.hpp"
#include "oracle.hpp"

using namespace chyp;

namespace {

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& err) {
    return err;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::ParseError, "none");
}

// K from raw eigenvectors: e^κ on a, e^{-iψ - i Im κ} on x, e^{iψ - i Im κ} on y, e^{-κ̄} on r
Mat4 oracle_twist(const Mat4& a, Complex kappa, double psi) {
  auto f = oracle::eigenframe(a);
  Mat4 p = f.matrix();
  Complex i(0, 1);
  Mat4 d = oracle::diag(std::exp(kappa), std::exp(-i * psi - i * kappa.imag()),
                        std::exp(i * psi - i * kappa.imag()), std::exp(-std::conj(kappa)));
  return p * d * p.inverse();
}

struct Config {
  GroupElement a, b, c;
};

Config twist_config(std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.seed = seed;
  Sampler s(cfg);
  for (;;) {
    auto p = s.random_nonsingular_pair();
    auto c = s.random_loxodromic();
    if (is_nonsingular(p.a.inverse(), c).overall) return {p.a, p.b, c};
  }
}

double tuple_distance(const TildeInvariants& u, const TildeInvariants& v) {
  return std::max({std::abs(u.X1 - v.X1), std::abs(u.X2 - v.X2), std::abs(u.beta1 - v.beta1),
                   std::abs(u.beta2 - v.beta2)});
}

Mat4 commutator_product(const std::vector<GroupElement>& gens) {
  Mat4 rel = Mat4::Identity();
  for (size_t i = 0; i + 1 < gens.size(); i += 2) {
    const Mat4& x = gens[i].matrix();
    const Mat4& b = gens[i + 1].matrix();
    rel = b * x * oracle::inv(b) * oracle::inv(x) * rel;
  }
  return rel;
}

double distance_to_center(const Mat4& m) {
  double best = 1e300;
  for (Complex u : {Complex(1), Complex(-1), Complex(0, 1), Complex(0, -1)})
    best = std::min(best, (m - u * Mat4::Identity()).norm());
  return best;
}

}  // namespace

TEST(TwistBend, Examples) {
  Sampler s;
  auto a = s.random_loxodromic();
  auto k0 = twist_bend_element(a, {Complex(0), 0});
  EXPECT_LT((k0.matrix() - Mat4::Identity()).norm(), 1e-12);

  auto d = decompose_loxodromic(normal_form(2, 0, 0));
  auto k = twist_bend_element(d, std::log(3.0), kPi / 4);
  Complex i(0, 1);
  Mat4 want = oracle::diag(3, std::exp(-i * kPi / 4.0), std::exp(i * kPi / 4.0), 1.0 / 3);
  EXPECT_LT((k.matrix() - want).norm(), 1e-14);
}

TEST(TwistBend, CommutesAndMatchesOracle) {
  Sampler s;
  for (int n = 0; n < 100; ++n) {
    auto a = s.random_loxodromic();
    Complex kappa(s.uniform(-1, 1), s.uniform(-1, 1));
    double psi = s.uniform(-kPi, kPi);
    auto k = twist_bend_element(a, {kappa, psi});
    const Mat4& km = k.matrix();
    const Mat4& am = a.matrix();
    EXPECT_LT((km * am - am * km).norm() / (km.norm() * am.norm()), 1e-9);
    EXPECT_TRUE(k.certified());
    Mat4 o = oracle_twist(am, kappa, psi);
    EXPECT_LT((km - o).norm() / o.norm(), 1e-8);
  }
}

TEST(TildeInvariants, IdentityTwistGivesUntwistedValues) {
  auto cfg = twist_config(1);
  auto t = tilde_invariants(cfg.a, cfg.b, cfg.c, {Complex(0), 0});
  auto fa = oracle::eigenframe(cfg.a.matrix()), fb = oracle::eigenframe(cfg.b.matrix()),
       fc = oracle::eigenframe(cfg.c.matrix());
  EXPECT_LT(oracle::rel(t.X1, oracle::cross(fb.a, fa.a, fa.r, fc.r)), 1e-9);
  EXPECT_LT(oracle::rel(t.X2, oracle::cross(fb.a, fa.r, fa.a, fc.r)), 1e-9);
  EXPECT_LT(oracle::rel(t.beta1, oracle::cross(fc.r, fb.a, fa.x, fa.a)), 1e-9);
  EXPECT_LT(oracle::rel(t.beta2, oracle::cross(fc.r, fb.a, fa.y, fa.a)), 1e-9);
}

TEST(TildeInvariants, TwistedValuesMatchOracle) {
  auto cfg = twist_config(2);
  Sampler s;
  auto fa = oracle::eigenframe(cfg.a.matrix()), fb = oracle::eigenframe(cfg.b.matrix()),
       fc = oracle::eigenframe(cfg.c.matrix());
  for (int n = 0; n < 20; ++n) {
    TwistBend k{Complex(s.uniform(-0.5, 0.5), s.uniform(-0.5, 0.5)), s.uniform(-1, 1)};
    auto t = tilde_invariants(cfg.a, cfg.b, cfg.c, k);
    Vec4 krc = oracle_twist(cfg.a.matrix(), k.kappa, k.psi) * fc.r;
    EXPECT_LT(oracle::rel(t.X1, oracle::cross(fb.a, fa.a, fa.r, krc)), 1e-8);
    EXPECT_LT(oracle::rel(t.X2, oracle::cross(fb.a, fa.r, fa.a, krc)), 1e-8);
    EXPECT_LT(oracle::rel(t.beta1, oracle::cross(krc, fb.a, fa.x, fa.a)), 1e-8);
    EXPECT_LT(oracle::rel(t.beta2, oracle::cross(krc, fb.a, fa.y, fa.a)), 1e-8);
  }
}

TEST(TildeInvariants, GridInjectivityAndInversion) {
  auto cfg = twist_config(3);
  std::vector<TwistBend> grid;
  std::vector<TildeInvariants> tuples;
  for (int u = -2; u <= 2; ++u)
    for (int v = -2; v <= 2; ++v) {
      TwistBend k{Complex(0.25 * u, 0.1), 0.25 * v};
      grid.push_back(k);
      tuples.push_back(tilde_invariants(cfg.a, cfg.b, cfg.c, k));
    }
  double margin = 1e300;
  for (size_t i = 0; i < tuples.size(); ++i) {
    for (size_t j = i + 1; j < tuples.size(); ++j)
      margin = std::min(margin, tuple_distance(tuples[i], tuples[j]));
    for (int bi = 1; bi <= 2; ++bi) {
      auto back = invert_tilde_invariants(cfg.a, cfg.b, cfg.c, tuples[i], bi);
      EXPECT_LT(std::abs(back.kappa - grid[i].kappa), 1e-8);
      EXPECT_LT(std::abs(oracle::wrap(back.psi - grid[i].psi)), 1e-8);
    }
  }
  EXPECT_GE(margin, 1e-4);
}

TEST(TildeInvariants, ConjugationInvariant) {
  auto cfg = twist_config(4);
  Sampler s;
  TwistBend k{Complex(0.3, -0.2), 0.7};
  auto t = tilde_invariants(cfg.a, cfg.b, cfg.c, k);
  for (int n = 0; n < 10; ++n) {
    auto g = s.random_group_element();
    auto t2 = tilde_invariants(cfg.a.conjugated_by(g), cfg.b.conjugated_by(g),
                               cfg.c.conjugated_by(g), k);
    EXPECT_LT(oracle::rel(t2.X1, t.X1), 1e-8);
    EXPECT_LT(oracle::rel(t2.X2, t.X2), 1e-8);
    EXPECT_LT(oracle::rel(t2.beta1, t.beta1), 1e-8);
    EXPECT_LT(oracle::rel(t2.beta2, t.beta2), 1e-8);
  }
}

TEST(AttachPants, CompatiblePants) {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    auto cfg = twist_config(seed);
    // P1 = <A, B>, P2 = <C, D> with D = A^-1
    auto p1 = PantsGroup::make(cfg.a, cfg.b);
    auto p2 = PantsGroup::make(cfg.c, cfg.a.inverse());
    TwistBend k{Complex(0.2, 0.4), -0.3};
    auto f = attach_pants(p1, p2, k);
    Mat4 km = oracle_twist(cfg.a.matrix(), k.kappa, k.psi), ki = km.inverse();
    const Mat4 &a = cfg.a.matrix(), &b = cfg.b.matrix(), &c = cfg.c.matrix();
    Mat4 d = oracle::inv(a);
    EXPECT_LT((f.generators[2].matrix() - km * c * ki).norm() / c.norm(), 1e-7);
    EXPECT_LT((f.peripherals[1].matrix() - oracle::inv(b) * oracle::inv(a)).norm(), 1e-8 * a.norm() * b.norm());
    EXPECT_LT((f.peripherals[3].matrix() - km * oracle::inv(d) * oracle::inv(c) * ki).norm() /
                  (a.norm() * c.norm()),
              1e-7);
    for (const auto& p : f.peripherals) EXPECT_TRUE(is_loxodromic(p));
    EXPECT_EQ(f.parameter_count, 30);
    EXPECT_LT((f.K.matrix() * a - a * f.K.matrix()).norm() / (f.K.matrix().norm() * a.norm()), 1e-9);
  }
}

TEST(AttachPants, IdentityTwistIsPlainAmalgam) {
  auto cfg = twist_config(8);
  auto f = attach_pants(PantsGroup::make(cfg.a, cfg.b), PantsGroup::make(cfg.c, cfg.a.inverse()),
                        {Complex(0), 0});
  EXPECT_LT((f.generators[0].matrix() - cfg.a.matrix()).norm(), 1e-12);
  EXPECT_LT((f.generators[1].matrix() - cfg.b.matrix()).norm(), 1e-12);
  EXPECT_LT((f.generators[2].matrix() - cfg.c.matrix()).norm() / cfg.c.matrix().norm(), 1e-9);
}

TEST(AttachPants, IncompatibleBoundary) {
  auto cfg = twist_config(9);
  Sampler s;
  GroupElement d = s.random_loxodromic();
  while (!is_nonsingular(cfg.c, d).overall) d = s.random_loxodromic();
  auto err = error_of([&] {
    attach_pants(PantsGroup::make(cfg.a, cfg.b), PantsGroup::make(cfg.c, d), {Complex(0), 0});
  });
  EXPECT_EQ(err.code(), ErrorCode::IncompatibleBoundary);
}

TEST(AttachPants, ConjugationEquivariant) {
  auto cfg = twist_config(10);
  Sampler s;
  auto g = s.random_group_element();
  TwistBend k{Complex(0.1, 0.2), 0.5};
  auto f = attach_pants(PantsGroup::make(cfg.a, cfg.b), PantsGroup::make(cfg.c, cfg.a.inverse()), k);
  auto a2 = cfg.a.conjugated_by(g);
  auto f2 = attach_pants(PantsGroup::make(a2, cfg.b.conjugated_by(g)),
                         PantsGroup::make(cfg.c.conjugated_by(g), a2.inverse()), k);
  for (int i = 0; i < 3; ++i) {
    Mat4 want = g.matrix() * f.generators[i].matrix() * oracle::inv(g.matrix());
    EXPECT_LT((f2.generators[i].matrix() - want).norm() / want.norm(), 1e-7);
  }
}

TEST(CloseHandle, IdentityTwistAndEquivariance) {
  SamplerConfig sc;
  sc.seed = 12;
  Sampler s(sc);
  for (int n = 0; n < 5; ++n) {
    auto a = s.random_loxodromic();
    auto b = s.random_group_element();
    if (!is_nonsingular(a, b * a.inverse() * b.inverse()).overall) continue;
    auto h0 = close_handle(a, b, {Complex(0), 0});
    EXPECT_LT((h0.BK.matrix() - b.matrix()).norm() / b.matrix().norm(), 1e-9);
    EXPECT_EQ(h0.parameter_count, 15);
    // tr(B A^-1 B^-1) = conj(tr A)
    auto ta = oracle::traces(a.matrix());
    auto tc = oracle::traces(b.matrix() * oracle::inv(a.matrix()) * oracle::inv(b.matrix()));
    EXPECT_LT(oracle::rel(tc.tau, std::conj(ta.tau)), 1e-9);

    TwistBend k{Complex(0.3, 0.1), -0.4};
    auto h = close_handle(a, b, k);
    Mat4 km = oracle_twist(a.matrix(), k.kappa, k.psi);
    EXPECT_LT((h.BK.matrix() - b.matrix() * km).norm() / (b.matrix() * km).norm(), 1e-8);
    auto g = s.random_group_element();
    auto h2 = close_handle(a.conjugated_by(g), b.conjugated_by(g), k);
    Mat4 want = g.matrix() * h.BK.matrix() * oracle::inv(g.matrix());
    EXPECT_LT((h2.BK.matrix() - want).norm() / want.norm(), 1e-7);
    EXPECT_LT(max_mismatch(h.pants, h2.pants), 1e-8);
  }
}

TEST(Budget, Counts) {
  EXPECT_EQ(parameter_budget(2).total(), 30);
  EXPECT_EQ(parameter_budget(3).total(), 60);
  for (int g = 2; g <= 8; ++g) EXPECT_EQ(parameter_budget(g).total(), 30 * g - 30);
  auto b = parameter_budget(2);
  int sum = 0;
  for (const auto& it : b.items) sum += it.count * it.per_item;
  EXPECT_EQ(sum, 30);
}

TEST(Assemble, GenusTwo) {
  for (int n = 0; n < 10; ++n) {
    Sampler s(surface_config(derive_seed(99, n)));
    auto in = synthetic_surface(2, s);
    ASSERT_EQ(in.pants.size(), 2u);
    ASSERT_EQ(in.twists.size(), 3u);
    auto rep = assemble_surface(in);
    ASSERT_EQ(rep.generators.size(), 4u);
    EXPECT_EQ(rep.budget.total(), 30);
    EXPECT_LT(rep.relation_residual, 1e-6);
    // recompute the relation from the generators
    EXPECT_LT(distance_to_center(commutator_product(rep.generators)), 1e-6);
    for (const auto& g : rep.generators) EXPECT_LT(oracle::form_residual(g.matrix()), 1e-6);
    // the first handle realizes its pants record: <X1, B1 X1^-1 B1^-1>
    const Mat4& x = rep.generators[0].matrix();
    const Mat4& b = rep.generators[1].matrix();
    auto y = GroupElement::unchecked(b * oracle::inv(x) * oracle::inv(b));
    auto rec = pair_invariants(rep.generators[0], y, {in.pants[0].alpha_index, in.pants[0].beta_index});
    EXPECT_LT(max_mismatch(in.pants[0], rec), 1e-6);
  }
}

TEST(Assemble, GenusThree) {
  Sampler s(surface_config(77));
  auto in = synthetic_surface(3, s);
  EXPECT_EQ(in.pants.size(), 4u);
  EXPECT_EQ(in.twists.size(), 6u);
  auto rep = assemble_surface(in);
  EXPECT_EQ(rep.generators.size(), 6u);
  EXPECT_EQ(rep.budget.total(), 60);
  EXPECT_LT(rep.relation_relative, 1e-6);
}

TEST(Assemble, MismatchedBoundary) {
  Sampler s(surface_config(5));
  auto in = synthetic_surface(2, s);
  in.pants[1].tauB += 1e-3;
  auto err = error_of([&] { assemble_surface(in); });
  EXPECT_EQ(err.code(), ErrorCode::IncompatibleBoundary);
  EXPECT_NE(std::string(err.what()).find("curve 1"), std::string::npos);
}

TEST(Assemble, WrongRecordCount) {
  Sampler s(surface_config(6));
  auto in = synthetic_surface(2, s);
  in.twists.pop_back();
  EXPECT_EQ(error_of([&] { assemble_surface(in); }).code(), ErrorCode::BudgetMismatch);
}
