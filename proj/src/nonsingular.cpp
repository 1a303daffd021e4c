#include "chyp/nonsingular.hpp"

#include <cmath>

namespace chyp {

namespace {

double unit_pairing(const Vec4& z, const Vec4& w) {
  return std::abs(herm_form(z, w)) / (z.norm() * w.norm());
}

bool pairing_pair_nonzero(const Vec4& a, const Vec4& r, const Vec4& x, double tol) {
  return unit_pairing(a, x) > tol && unit_pairing(x, r) > tol;
}

}  // namespace

std::optional<Vec4> common_fixed_point(const LoxodromicDecomposition& A,
                                       const LoxodromicDecomposition& B, double tol) {
  for (const Vec4& u : {A.a(), A.rep()})
    for (const Vec4& v : {B.a(), B.rep()})
      if (line_angle(u, v) < tol) return u;
  return std::nullopt;
}

ChainTest common_c2_chain(const LoxodromicDecomposition& A, const LoxodromicDecomposition& B,
                          double tol) {
  Mat4 m;
  m << A.a().normalized(), A.rep().normalized(), B.a().normalized(), B.rep().normalized();
  Eigen::JacobiSVD<Mat4> svd(m);
  auto s = svd.singularValues();
  ChainTest out{std::nullopt, s(3) / s(0)};
  if (out.relative_gap < tol) {
    Mat4 p = m.adjoint() * form_matrix();
    Eigen::JacobiSVD<Mat4> ps(p, Eigen::ComputeFullV);
    Vec4 w = ps.matrixV().col(3);
    double q = herm_form(w, w).real();
    if (q > 0) w /= std::sqrt(q);
    out.polar = w;
  }
  return out;
}

std::string NonSingularityReport::failed_condition() const {
  if (!condition_i) return "condition (i): common fixed point";
  if (!condition_ii) return "condition (ii): fixed points on a common C2-chain";
  if (!condition_iii) return "condition (iii): all eta or all nu invariants vanish";
  return "";
}

NonSingularityReport is_nonsingular(const LoxodromicDecomposition& A,
                                    const LoxodromicDecomposition& B) {
  NonSingularityReport r;
  r.shared_fixed_point = common_fixed_point(A, B);
  r.condition_i = !r.shared_fixed_point;
  auto chain = common_c2_chain(A, B);
  r.chain_gap = chain.relative_gap;
  r.polar_vector = chain.polar;
  r.condition_ii = r.condition_i && !chain.polar;
  r.eta_nonzero = {pairing_pair_nonzero(A.a(), A.rep(), B.x(), kVanishingPairing),
                   pairing_pair_nonzero(A.a(), A.rep(), B.y(), kVanishingPairing)};
  r.nu_nonzero = {pairing_pair_nonzero(B.a(), B.rep(), A.x(), kVanishingPairing),
                  pairing_pair_nonzero(B.a(), B.rep(), A.y(), kVanishingPairing)};
  r.condition_iii = (r.eta_nonzero[0] || r.eta_nonzero[1]) && (r.nu_nonzero[0] || r.nu_nonzero[1]);
  r.overall = r.condition_i && r.condition_ii && r.condition_iii;
  return r;
}

NonSingularityReport is_nonsingular(const GroupElement& a, const GroupElement& b) {
  return is_nonsingular(decompose_loxodromic(a), decompose_loxodromic(b));
}

const char* reducibility_name(ReducibilityCase c) {
  switch (c) {
    case ReducibilityCase::XaXb: return "x_A=x_B";
    case ReducibilityCase::YaYb: return "y_A=y_B";
    case ReducibilityCase::YaXb: return "y_A=x_B";
    case ReducibilityCase::XaYb: return "x_A=y_B";
  }
  return "?";
}

std::optional<ReducibilityWitness> reducibility_witness(const LoxodromicDecomposition& A,
                                                        const LoxodromicDecomposition& B,
                                                        double tol) {
  if (common_fixed_point(A, B)) return std::nullopt;
  auto e = eta_invariants(A, B);
  auto vanish = [&](const Vec4& a, const Vec4& r, const Vec4& x) {
    return !pairing_pair_nonzero(a, r, x, tol);
  };
  bool eta1 = vanish(A.a(), A.rep(), B.x()), eta2 = vanish(A.a(), A.rep(), B.y());
  bool nu1 = vanish(B.a(), B.rep(), A.x()), nu2 = vanish(B.a(), B.rep(), A.y());

  struct Candidate {
    bool zeta_zero;
    bool cond;
    Vec4 va, vb;
    ReducibilityCase kind;
  };
  const Candidate cands[] = {
      {true, eta1 && nu1, A.x(), B.x(), ReducibilityCase::XaXb},
      {true, eta2 && nu2, A.y(), B.y(), ReducibilityCase::YaYb},
      {false, eta1 && nu2, A.y(), B.x(), ReducibilityCase::YaXb},
      {false, eta2 && nu1, A.x(), B.y(), ReducibilityCase::XaYb},
  };
  for (const auto& c : cands) {
    bool zeta_ok = c.zeta_zero ? e.zeta0.is_zero(tol) : e.zeta0.is_infinite(tol);
    if (!zeta_ok || !c.cond) continue;
    if (line_angle(c.va, c.vb) <= tol) return ReducibilityWitness{c.va, c.kind};
  }
  return std::nullopt;
}

}  // namespace chyp
