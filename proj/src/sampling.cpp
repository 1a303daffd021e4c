#include "chyp/sampling.hpp"

#include <cmath>

namespace chyp {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Sampler::Sampler(SamplerConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Complex Sampler::complex_in_box(double w) { return {uniform(-w, w), uniform(-w, w)}; }

Vec4 Sampler::random_vector(double w) {
  Vec4 v;
  for (int k = 0; k < 4; ++k) v(k) = complex_in_box(w);
  return v;
}

Vec4 Sampler::random_null_vector() {
  const double w = cfg_.frame_spread;
  Complex z2 = complex_in_box(w), z3 = complex_in_box(w);
  double im = uniform(-w, w);
  Vec4 v;
  v << Complex(-(std::norm(z2) + std::norm(z3)) / 2, im), z2, z3, 1.0;
  return v;
}

GroupElement Sampler::random_group_element() {
  for (int i = 0; i < cfg_.rejection_limit; ++i) {
    Vec4 a = random_null_vector(), r = random_null_vector();
    Vec4 seeds[2] = {random_vector(), random_vector()};
    try {
      Frame f = indefinite_gram_schmidt(a, r, seeds);
      Mat4 m = f.matrix();
      if (m.norm() > cfg_.max_norm) continue;
      return GroupElement::certify(m);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ResampleExhausted, "random_group_element");
}

GroupElement Sampler::random_loxodromic(double r, double theta, double phi) {
  for (int i = 0; i < cfg_.rejection_limit; ++i) {
    GroupElement g = random_group_element();
    Mat4 m = g.matrix() * normal_form(r, theta, phi).matrix() * group_inverse(g.matrix());
    if (m.norm() > cfg_.max_norm) continue;
    return GroupElement::certify(m);
  }
  throw Error(ErrorCode::ResampleExhausted, "random_loxodromic");
}

GroupElement Sampler::random_loxodromic() {
  for (int i = 0; i < cfg_.rejection_limit; ++i) {
    double r = uniform(cfg_.r_min, cfg_.r_max);
    double th = uniform(-cfg_.angle_max, cfg_.angle_max);
    double ph = uniform(-cfg_.angle_max, cfg_.angle_max);
    if (std::abs(std::polar(1.0, ph) - std::polar(1.0, -(2 * th + ph))) < cfg_.min_unit_gap) continue;
    try {
      return random_loxodromic(r, th, ph);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ResampleExhausted, "random_loxodromic");
}

Sampler::Pair Sampler::random_nonsingular_pair() {
  for (int i = 0; i < cfg_.rejection_limit; ++i) {
    try {
      GroupElement a = random_loxodromic(), b = random_loxodromic();
      auto rep = is_nonsingular(a, b);
      if (!rep.overall || !is_loxodromic(a * b)) continue;
      return {a, b, i};
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ResampleExhausted, "random_nonsingular_pair");
}

Vec4 Sampler::random_null_orthogonal_to(const Vec4& v) {
  Vec4 z = random_null_vector();
  z -= herm_form(z, v) * v;
  double q = herm_form(z, z).real();
  if (q > -1e-14 * z.squaredNorm()) return z;
  Vec4 p = random_vector();
  p -= herm_form(p, v) * v;
  p -= (herm_form(p, z) / q) * z;
  p /= std::sqrt(herm_form(p, p).real());
  return z + std::polar(std::sqrt(-q), uniform(-kPi, kPi)) * p;
}

GroupElement Sampler::frame_with_positive(const Vec4& v, int slot) {
  for (int i = 0; i < cfg_.rejection_limit; ++i) {
    Vec4 a = random_null_orthogonal_to(v), r = random_null_orthogonal_to(v);
    Vec4 seeds[2] = {v, random_vector()};
    try {
      Frame f = indefinite_gram_schmidt(a, r, seeds);
      if (line_angle(f.x, v) > 1e-10) continue;
      Mat4 m = f.matrix();
      if (slot == 2) {
        m.col(1) = f.y;
        m.col(2) = -f.x;
      }
      if (m.norm() > cfg_.max_norm) continue;
      return GroupElement::certify(m);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ResampleExhausted, "frame_with_positive");
}

Sampler::PlantedPair Sampler::planted_reducible_pair(ReducibilityCase kind) {
  Vec4 v;
  do {
    v = random_vector();
  } while (herm_form(v, v).real() < 0.2 * v.squaredNorm());
  v /= std::sqrt(herm_form(v, v).real());

  auto element = [&](int slot) {
    for (;;) {
      double r = uniform(cfg_.r_min, cfg_.r_max);
      double th = uniform(-cfg_.angle_max, cfg_.angle_max);
      double ph = uniform(-cfg_.angle_max, cfg_.angle_max);
      if (std::abs(std::polar(1.0, ph) - std::polar(1.0, -(2 * th + ph))) < cfg_.min_unit_gap)
        continue;
      // relabel so that slot 1 carries the x eigenvalue of the decomposition
      auto lp = loxodromic_parameters({std::polar(r, th), std::polar(1.0, ph),
                                       std::polar(1.0, -(2 * th + ph)), std::polar(1.0 / r, th)});
      Mat4 e = normal_form(lp.r, lp.theta, lp.phi).matrix();
      Mat4 f = frame_with_positive(v, slot).matrix();
      return Mat4(f * e * group_inverse(f));
    }
  };
  bool ax = kind == ReducibilityCase::XaXb || kind == ReducibilityCase::XaYb;
  bool bx = kind == ReducibilityCase::XaXb || kind == ReducibilityCase::YaXb;
  Mat4 a = element(ax ? 1 : 2), b = element(bx ? 1 : 2);
  Mat4 c = random_group_element().matrix(), ci = group_inverse(c);
  return {GroupElement::unchecked(c * a * ci), GroupElement::unchecked(c * b * ci), c * v, kind};
}

namespace {

PairInvariants pants_record(const GroupElement& a, const GroupElement& b) {
  return PantsGroup::make(a, b).invariants;
}

double third_mismatch(const PairInvariants& p, const TraceInvariants& q, bool conj_tau) {
  // (τ, σ) of the third peripheral B^-1 A^-1 are not in the record; compare via reconstruction
  auto cp = canonical_pair_from_invariants(p);
  auto t = trace_invariants(cp.B.inverse() * cp.A.inverse());
  Complex tau = conj_tau ? std::conj(q.tau) : q.tau;
  return std::max(std::abs(t.tau - tau) / std::max(1.0, std::abs(tau)),
                  std::abs(t.sigma - q.sigma) / std::max(1.0, std::abs(q.sigma)));
}

// Curve data shared between records must agree far below the assembly tolerance.
bool records_consistent(const SurfaceInput& in) {
  constexpr double tol = 1e-10;
  auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  auto pair_ok = [&](Complex t1, Complex s1, Complex t2, Complex s2) {
    return rel(t2, std::conj(t1)) <= tol && rel(s2, s1) <= tol;
  };
  const int g = in.genus;
  for (int i = 0; i < g; ++i) {
    const auto& h = in.pants[i];
    if (!pair_ok(h.tauA, h.sigmaA, h.tauB, h.sigmaB)) return false;
  }
  for (int k = 0; k < g - 2; ++k) {
    const auto& c = in.pants[g + k];
    // U_1 against Z_1, V_k against Z_{k+1}, W_k against U_{k+1} or Z_g
    auto z = [&](int i) {
      auto cp = canonical_pair_from_invariants(in.pants[i]);
      return trace_invariants(cp.B.inverse() * cp.A.inverse());
    };
    if (k == 0) {
      auto z1 = z(0);
      if (!pair_ok(z1.tau, z1.sigma, c.tauA, c.sigmaA)) return false;
    }
    auto zk = z(k + 1);
    if (!pair_ok(zk.tau, zk.sigma, c.tauB, c.sigmaB)) return false;
    if (k + 1 < g - 2) {
      const auto& n = in.pants[g + k + 1];
      if (third_mismatch(c, {std::conj(n.tauA), n.sigmaA, 0}, false) > tol) return false;
    } else {
      if (third_mismatch(c, z(g - 1), true) > tol) return false;
    }
  }
  return true;
}

}  // namespace

SamplerConfig surface_config(std::uint64_t seed) {
  SamplerConfig c;
  c.seed = seed;
  c.r_min = 1.2;
  c.r_max = 2.0;
  c.frame_spread = 0.5;
  c.max_norm = 6.0;
  return c;
}

SurfaceInput synthetic_surface(int genus, Sampler& s) {
  if (genus < 2) throw Error(ErrorCode::BudgetMismatch, "genus must be at least 2");
  const int g = genus;
  auto inv = [](const Mat4& m) { return group_inverse(m); };
  auto ge = [](const Mat4& m) { return GroupElement::unchecked(m); };
  for (int attempt = 0; attempt < s.config().rejection_limit; ++attempt) {
    try {
      Mat4 x = s.random_loxodromic().matrix();
      std::vector<Mat4> y;
      for (int j = 0; j < g - 1; ++j) y.push_back(s.random_loxodromic().matrix());

      // handle j < g is P_j <x, y_j x^-1 y_j^-1> P_j^-1 with P_j = y_1 ... y_{j-1};
      // handle g is <P, x P^-1 x^-1>, P = y_1 ... y_{g-1}. Then Z_g ... Z_1 = I.
      // Records are conjugation invariant so handles are recorded unconjugated.
      SurfaceInput in;
      in.genus = g;
      std::vector<Mat4> Z(g);
      Mat4 p = Mat4::Identity();
      for (int j = 0; j < g - 1; ++j) {
        Mat4 yj = y[j] * inv(x) * inv(y[j]);
        in.pants.push_back(pants_record(ge(x), ge(yj)));
        Z[j] = p * (y[j] * x * inv(y[j]) * inv(x)) * inv(p);
        p = p * y[j];
      }
      in.pants.push_back(pants_record(ge(p), ge(Mat4(x * inv(p) * inv(x)))));
      Z[g - 1] = x * p * inv(x) * inv(p);

      Mat4 w;
      for (int k = 0; k < g - 2; ++k) {
        Mat4 u = k == 0 ? inv(Z[0]) : inv(w);
        Mat4 v = inv(Z[k + 1]);
        in.pants.push_back(pants_record(ge(u), ge(v)));
        w = inv(v) * inv(u);
      }
      if (!records_consistent(in)) continue;
      for (int c = 0; c < 3 * g - 3; ++c)
        in.twists.push_back({Complex(s.uniform(-0.3, 0.3), s.uniform(-0.3, 0.3)),
                             s.uniform(-0.5, 0.5)});
      return in;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::ResampleExhausted, "synthetic_surface");
}

}  // namespace chyp
