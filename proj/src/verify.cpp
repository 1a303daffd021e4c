#include "chyp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace chyp {

namespace {

// One sample: returns the error statistic, throws or returns > limit on failure.
struct Check {
  double error;
  bool ok;
  std::string why;
};

using SampleFn = std::function<Check(Sampler&, int)>;

double rel(double err, double scale) { return err / std::max(1.0, scale); }

Check group_sample(Sampler& s, int) {
  GroupElement g = s.random_group_element();
  const Mat4& a = g.matrix();
  const Mat4& h = form_matrix();
  double form = (a.adjoint() * h * a - h).norm();
  auto t = trace_invariants(g);
  Mat4 a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  Mat4 ch = a4 - t.tau * a3 + t.sigma * a2 - std::conj(t.tau) * a + Mat4::Identity();
  double n = std::max(1.0, a.norm());
  double cayley = ch.norm() / (n * n * n * n);
  double err = std::max({form, cayley, t.sigma_imag_residual});
  bool ok = form <= 1e-8 && cayley <= 1e-8 && t.sigma_imag_residual <= 1e-10;
  return {err, ok, ok ? "" : "form " + std::to_string(form) + " cayley " + std::to_string(cayley)};
}

Check variety_sample(Sampler& s, int i) {
  auto q = (i % 10 == 9) ? chain_quadruple(s) : random_quadruple(s);
  auto t = cross_ratio_triple(q[0], q[1], q[2], q[3]);
  double sc = t.scale();
  double var = t.variety_residual / sc;
  double slack = t.inequality_slack / sc;
  double bound = 2 * (t.X1 + t.X2).real() - 1;
  double err = std::max(var, -std::min(0.0, slack));
  bool ok = var <= 1e-9 && slack >= -1e-9 && bound >= -1e-9;
  if (i % 10 == 9) {
    err = std::max(err, std::abs(slack));
    ok = ok && std::abs(slack) <= 1e-9;
  }
  return {err, ok, ok ? "" : "variety " + std::to_string(var) + " slack " + std::to_string(slack)};
}

Check cartan_sample(Sampler& s, int i) {
  if (i % 5 == 4) {
    auto q = chain_quadruple(s);
    double a = cartan_invariant(q[0], q[1], q[2]);
    double err = std::abs(std::abs(a) - kPi / 2);
    return {err, err <= 1e-9, "chain triple angle " + std::to_string(a)};
  }
  for (int k = 0; k < s.config().rejection_limit; ++k) {
    auto q = random_quadruple(s);
    auto t = cross_ratio_triple(q[0], q[1], q[2], q[3]);
    if (std::abs(t.X1.imag()) <= 1e-3 || std::abs(t.X2.imag()) <= 1e-3 ||
        std::abs(t.X3.imag()) <= 1e-3)
      continue;
    auto r = angle_relations(q[0], q[1], q[2], q[3]);
    double err = std::max(r.sum_residual, r.difference_residual);
    return {err, err <= 1e-8, "angle residual " + std::to_string(err)};
  }
  throw Error(ErrorCode::ResampleExhausted, "generic quadruple");
}

Check identities_sample(Sampler& s, int) {
  auto p = s.random_nonsingular_pair();
  auto r = identity_relations(decompose_loxodromic(p.a), decompose_loxodromic(p.b));
  double err = *std::max_element(r.begin(), r.end());
  return {err, err < 1e-8, "identity residual " + std::to_string(err)};
}

Check roundtrip_sample(Sampler& s, int i) {
  auto p = s.random_nonsingular_pair();
  auto dA = decompose_loxodromic(p.a), dB = decompose_loxodromic(p.b);
  auto ab = alpha_beta_invariants(dA, dB);
  // cycle through the valid index choices
  IndexChoice idx;
  idx.alpha = ab.alpha[i % 2] ? 1 + i % 2 : 0;
  idx.beta = ab.beta[(i / 2) % 2] ? 1 + (i / 2) % 2 : 0;
  auto inv = pair_invariants(dA, dB, idx);
  auto cp = canonical_pair_from_invariants(inv);
  auto back = pair_invariants(cp.A, cp.B, {inv.alpha_index, inv.beta_index});
  double mm = max_mismatch(inv, back);
  auto conj = pairs_conjugate(p.a, p.b, cp.A, cp.B);
  double err = std::max(mm, conj.residual);
  bool ok = mm <= 1e-6 && conj.conjugate && conj.conjugator && conj.conjugator->certified() &&
            conj.residual <= 1e-6;
  return {err, ok, "mismatch " + std::to_string(mm) + " conjugacy " + std::to_string(conj.residual)};
}

Check reducibility_sample(Sampler& s, int i) {
  static const ReducibilityCase kinds[4] = {ReducibilityCase::XaXb, ReducibilityCase::YaYb,
                                            ReducibilityCase::YaXb, ReducibilityCase::XaYb};
  auto planted = s.planted_reducible_pair(kinds[i % 4]);
  auto w = reducibility_witness(decompose_loxodromic(planted.a), decompose_loxodromic(planted.b));
  if (!w) return {1, false, "planted pair not detected"};
  double ang = line_angle(w->eigenvector, planted.eigenline);
  auto p = s.random_nonsingular_pair();
  auto none = reducibility_witness(decompose_loxodromic(p.a), decompose_loxodromic(p.b));
  bool ok = ang <= 1e-7 && !none;
  return {ang, ok, none ? "witness on a non-singular pair" : "eigenline angle " + std::to_string(ang)};
}

struct TwistConfig {
  GroupElement a, b, c;
};

TwistConfig twist_config(Sampler& s) {
  for (int k = 0; k < s.config().rejection_limit; ++k) {
    auto p = s.random_nonsingular_pair();
    GroupElement c = s.random_loxodromic();
    if (!is_nonsingular(p.a.inverse(), c).overall) continue;
    return {p.a, p.b, c};
  }
  throw Error(ErrorCode::ResampleExhausted, "twist configuration");
}

double tuple_distance(const TildeInvariants& u, const TildeInvariants& v) {
  return std::max({std::abs(u.X1 - v.X1), std::abs(u.X2 - v.X2), std::abs(u.beta1 - v.beta1),
                   std::abs(u.beta2 - v.beta2)});
}

Check twist_sample(Sampler& s, int) {
  auto cfg = twist_config(s);
  double margin = 1e300, inv_err = 0;
  // planes (Re κ, ψ) and (Im κ, ψ), spacing 0.25
  for (int plane = 0; plane < 2; ++plane) {
    std::vector<TwistBend> grid;
    std::vector<TildeInvariants> tuples;
    for (int u = -2; u <= 2; ++u)
      for (int v = -2; v <= 2; ++v) {
        TwistBend k = plane == 0 ? TwistBend{Complex(0.25 * u, 0.1), 0.25 * v}
                                 : TwistBend{Complex(0.1, 0.25 * u), 0.25 * v};
        grid.push_back(k);
        tuples.push_back(tilde_invariants(cfg.a, cfg.b, cfg.c, k));
      }
    for (size_t i = 0; i < tuples.size(); ++i) {
      for (size_t j = i + 1; j < tuples.size(); ++j)
        margin = std::min(margin, tuple_distance(tuples[i], tuples[j]));
      for (int bi = 1; bi <= 2; ++bi) {
        auto back = invert_tilde_invariants(cfg.a, cfg.b, cfg.c, tuples[i], bi);
        inv_err = std::max({inv_err, std::abs(back.kappa - grid[i].kappa),
                            std::abs(wrap_angle(back.psi - grid[i].psi))});
      }
    }
  }
  bool ok = margin >= 1e-4 && inv_err <= 1e-8;
  return {inv_err, ok, "margin " + std::to_string(margin) + " inversion " + std::to_string(inv_err)};
}

Check assembly_sample(Sampler& s, int) {
  Sampler local(surface_config(s.engine()()));
  auto in = synthetic_surface(2, local);
  auto rep = assemble_surface(in);
  bool ok = rep.budget.total() == 30 && rep.generators.size() == 4 &&
            rep.relation_residual < 1e-6 && parameter_budget(3).total() == 60;
  return {rep.relation_residual, ok, "relation residual " + std::to_string(rep.relation_residual)};
}

Check conjugation_sample(Sampler& s, int) {
  auto p = s.random_nonsingular_pair();
  auto dA = decompose_loxodromic(p.a), dB = decompose_loxodromic(p.b);
  auto base = pair_invariants(dA, dB);
  auto eta0 = eta_invariants(dA, dB);
  double cartan0 = cartan_invariant(dA.a(), dA.rep(), dB.a());
  auto tA = trace_invariants(p.a);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    GroupElement c = s.random_group_element();
    GroupElement a2 = p.a.conjugated_by(c), b2 = p.b.conjugated_by(c);
    auto d2A = decompose_loxodromic(a2), d2B = decompose_loxodromic(b2);
    auto inv = pair_invariants(d2A, d2B, {base.alpha_index, base.beta_index});
    auto eta2 = eta_invariants(d2A, d2B);
    double cartan2 = cartan_invariant(d2A.a(), d2A.rep(), d2B.a());
    auto t2 = trace_invariants(a2);
    worst = std::max({worst, max_mismatch(base, inv), rel_diff(eta0.eta1, eta2.eta1),
                      rel_diff(eta0.eta2, eta2.eta2), rel_diff(eta0.nu1, eta2.nu1),
                      rel_diff(eta0.nu2, eta2.nu2),
                      std::abs(wrap_angle(cartan0 - cartan2)),
                      rel_diff(tA.tau, t2.tau), rel(std::abs(tA.sigma - t2.sigma), std::abs(tA.sigma))});
  }
  return {worst, worst <= 1e-8, "conjugation drift " + std::to_string(worst)};
}

const std::vector<std::pair<std::string, SampleFn>>& registry() {
  static const std::vector<std::pair<std::string, SampleFn>> r = {
      {"group", group_sample},           {"variety", variety_sample},
      {"cartan", cartan_sample},         {"identities", identities_sample},
      {"roundtrip", roundtrip_sample},   {"reducibility", reducibility_sample},
      {"twist", twist_sample},           {"assembly", assembly_sample},
      {"conjugation", conjugation_sample}};
  return r;
}

}  // namespace

std::array<Vec4, 4> random_quadruple(Sampler& s) {
  return {s.random_null_vector(), s.random_null_vector(), s.random_null_vector(),
          s.random_null_vector()};
}

std::array<Vec4, 4> chain_quadruple(Sampler& s) {
  // (it, 0, 0, 1) and e1 are null and span a complex line
  GroupElement g = s.random_group_element();
  std::array<Vec4, 4> q;
  for (int k = 0; k < 4; ++k) {
    Vec4 v = Vec4::Zero();
    if (k == 0) {
      v(0) = 1;
    } else {
      v(0) = Complex(0, s.uniform(-2, 2));
      v(3) = 1;
    }
    q[k] = g * v;
  }
  return q;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, f] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed) {
  const SampleFn* fn = nullptr;
  for (const auto& [k, f] : registry())
    if (k == name) fn = &f;
  if (!fn) throw Error(ErrorCode::ParseError, "unknown suite '" + name + "'");
  SuiteResult out;
  out.suite = name;
  out.seed = seed;
  out.samples = samples;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < samples; ++i) {
    SamplerConfig cfg;
    cfg.seed = derive_seed(seed, i);
    Sampler s(cfg);
    Check c{0, false, ""};
    try {
      c = (*fn)(s, i);
    } catch (const Error& e) {
      c = {0, false, e.what()};
    }
    out.worst = std::max(out.worst, c.error);
    if (c.ok) {
      ++out.pass;
    } else {
      ++out.fail;
      if (out.messages.size() < 5) out.messages.push_back("sample " + std::to_string(i) + ": " + c.why);
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace chyp
