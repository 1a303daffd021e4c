#include "chyp/invariants.hpp"

#include <cmath>
#include <limits>

#include "chyp/nonsingular.hpp"

namespace chyp {

namespace {

// Pairing of Euclidean-normalized lifts, used to decide vanishing independently of scale.
double unit_pairing(const Vec4& z, const Vec4& w) {
  return std::abs(herm_form(z, w)) / (z.norm() * w.norm());
}

void require_pairing(const Vec4& z, const Vec4& w, double tol, const char* what) {
  if (unit_pairing(z, w) <= tol) throw Error(ErrorCode::DegeneratePairing, what);
}

}  // namespace

Complex cross_ratio(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4, double tol) {
  require_pairing(z4, z1, tol, "<z4,z1> vanishes");
  require_pairing(z3, z2, tol, "<z3,z2> vanishes");
  return herm_form(z3, z1) * herm_form(z4, z2) / (herm_form(z4, z1) * herm_form(z3, z2));
}

double CrossRatioTriple::scale() const {
  return 1 + std::norm(X1) + std::norm(X2) + std::norm(X1) * std::abs(X3);
}

CrossRatioTriple make_triple(Complex x1, Complex x2, Complex x3, double tol) {
  CrossRatioTriple t{x1, x2, x3, 0, 0, false};
  t.variety_residual = std::abs(std::abs(x2) - std::abs(x1) * std::abs(x3));
  double n1 = std::norm(x1);
  t.inequality_slack = 2 * n1 * x3.real() - (n1 + std::norm(x2) + 1 - 2 * (x1 + x2).real());
  t.equality_case = std::abs(t.inequality_slack) <= tol * t.scale();
  return t;
}

CrossRatioTriple cross_ratio_triple(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                                    double tol) {
  return make_triple(cross_ratio(z1, z2, z3, z4, tol), cross_ratio(z1, z3, z2, z4, tol),
                     cross_ratio(z2, z3, z1, z4, tol), tol);
}

double cartan_invariant(const Vec4& z1, const Vec4& z2, const Vec4& z3, double tol) {
  require_pairing(z1, z2, tol, "<z1,z2> vanishes");
  require_pairing(z2, z3, tol, "<z2,z3> vanishes");
  require_pairing(z3, z1, tol, "<z3,z1> vanishes");
  return std::arg(-herm_form(z1, z2) * herm_form(z2, z3) * herm_form(z3, z1));
}

AngleRelations angle_relations(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                               double tol) {
  auto t = cross_ratio_triple(z1, z2, z3, z4, tol);
  AngleRelations out{0, 0, false};
  for (Complex x : {t.X1, t.X2, t.X3}) {
    double s = 1 + std::abs(x);
    if (std::abs(x.imag()) <= tol * s)
      throw Error(ErrorCode::RealCrossRatioCase, "a cross-ratio is real");
    if (std::abs(x.imag()) <= 1e-6 * s) out.near_real_warning = true;
  }
  double a1 = cartan_invariant(z4, z3, z2, tol);
  double a2 = cartan_invariant(z3, z2, z1, tol);
  out.sum_residual = std::abs(wrap_angle(a1 + a2 - std::arg(std::conj(t.X1) * t.X2)));
  out.difference_residual = std::abs(wrap_angle(a1 - a2 - std::arg(t.X3)));
  return out;
}

bool ProjectiveValue::is_infinite(double tol) const {
  return std::abs(den) <= tol * std::max(std::abs(num), std::abs(den));
}

bool ProjectiveValue::is_zero(double tol) const {
  return std::abs(num) <= tol * std::max(std::abs(num), std::abs(den));
}

Complex eta(const Vec4& a, const Vec4& r, const Vec4& x) {
  return herm_form(a, x) * herm_form(x, r) / (herm_form(a, r) * herm_form(x, x));
}

EtaSet eta_invariants(const LoxodromicDecomposition& A, const LoxodromicDecomposition& B,
                      double tol) {
  if (common_fixed_point(A, B))
    throw Error(ErrorCode::SharedFixedPoint, "eta_invariants");
  (void)tol;
  EtaSet e;
  e.eta1 = eta(A.a(), A.rep(), B.x());
  e.eta2 = eta(A.a(), A.rep(), B.y());
  e.nu1 = eta(B.a(), B.rep(), A.x());
  e.nu2 = eta(B.a(), B.rep(), A.y());
  Complex num = herm_form(B.x(), A.y()) * herm_form(B.y(), A.x());
  Complex den = herm_form(B.y(), A.y()) * herm_form(B.x(), A.x());
  double m = std::max(std::abs(num), std::abs(den));
  if (m > 0) {
    num /= m;
    den /= m;
  }
  e.zeta0 = {num, den};
  return e;
}

AlphaBeta alpha_beta_invariants(const LoxodromicDecomposition& A, const LoxodromicDecomposition& B,
                                double tol) {
  if (common_fixed_point(A, B))
    throw Error(ErrorCode::SharedFixedPoint, "alpha_beta_invariants");
  if (A.degenerate_unit || B.degenerate_unit)
    throw Error(ErrorCode::DegenerateUnitEigenvalues, "alpha and beta need distinct unit eigenvalues");
  AlphaBeta ab;
  auto value = [&](const Vec4& rr, const Vec4& aa, const Vec4& pos,
                   const Vec4& other) -> std::optional<Complex> {
    if (unit_pairing(pos, aa) <= kVanishingPairing || unit_pairing(pos, rr) <= kVanishingPairing)
      return std::nullopt;
    Complex v = herm_form(pos, rr) * herm_form(other, aa) / (herm_form(other, rr) * herm_form(pos, aa));
    return v;
  };
  ab.alpha[0] = value(A.rep(), A.a(), B.x(), B.a());
  ab.alpha[1] = value(A.rep(), A.a(), B.y(), B.a());
  ab.beta[0] = value(B.rep(), B.a(), A.x(), A.a());
  ab.beta[1] = value(B.rep(), B.a(), A.y(), A.a());
  for (int i = 0; i < 2 && !ab.chosen_alpha; ++i)
    if (ab.alpha[i] && std::abs(*ab.alpha[i]) > tol) ab.chosen_alpha = i + 1;
  for (int i = 0; i < 2 && !ab.chosen_beta; ++i)
    if (ab.beta[i] && std::abs(*ab.beta[i]) > tol) ab.chosen_beta = i + 1;
  if (!ab.chosen_alpha) throw Error(ErrorCode::NoValidAlpha, "both alpha pairings degenerate");
  if (!ab.chosen_beta) throw Error(ErrorCode::NoValidBeta, "both beta pairings degenerate");
  return ab;
}

CrossRatioTriple pair_cross_ratios(const LoxodromicDecomposition& A,
                                   const LoxodromicDecomposition& B, double tol) {
  return cross_ratio_triple(B.a(), A.a(), A.rep(), B.rep(), tol);
}

namespace {

PairInvariants assemble_record(const TraceInvariants& ta, const TraceInvariants& tb,
                               const LoxodromicDecomposition& A, const LoxodromicDecomposition& B,
                               IndexChoice idx, double tol) {
  auto rep = is_nonsingular(A, B);
  if (!rep.overall) throw Error(ErrorCode::NotNonSingular, rep.failed_condition());
  auto ab = alpha_beta_invariants(A, B, tol);
  PairInvariants p;
  p.tauA = ta.tau;
  p.tauB = tb.tau;
  p.sigmaA = ta.sigma;
  p.sigmaB = tb.sigma;
  p.cross_ratios = pair_cross_ratios(A, B, tol);
  int ia = idx.alpha ? idx.alpha : ab.chosen_alpha;
  int ib = idx.beta ? idx.beta : ab.chosen_beta;
  if (ia < 1 || ia > 2 || !ab.alpha[ia - 1] || std::abs(*ab.alpha[ia - 1]) <= tol)
    throw Error(ErrorCode::NoValidAlpha, "requested alpha index unavailable");
  if (ib < 1 || ib > 2 || !ab.beta[ib - 1] || std::abs(*ab.beta[ib - 1]) <= tol)
    throw Error(ErrorCode::NoValidBeta, "requested beta index unavailable");
  p.alpha_index = ia;
  p.alpha = *ab.alpha[ia - 1];
  p.beta_index = ib;
  p.beta = *ab.beta[ib - 1];
  return p;
}

}  // namespace

PairInvariants pair_invariants(const GroupElement& a, const GroupElement& b, IndexChoice idx,
                               double tol) {
  auto A = decompose_loxodromic(a, tol);
  auto B = decompose_loxodromic(b, tol);
  return assemble_record(trace_invariants(a), trace_invariants(b), A, B, idx, tol);
}

PairInvariants pair_invariants(const LoxodromicDecomposition& A, const LoxodromicDecomposition& B,
                               IndexChoice idx, double tol) {
  return assemble_record(trace_invariants(A.normal()), trace_invariants(B.normal()), A, B, idx,
                         tol);
}

std::array<double, 4> identity_relations(const LoxodromicDecomposition& A,
                                         const LoxodromicDecomposition& B, double tol) {
  auto e = eta_invariants(A, B, tol);
  auto ab = alpha_beta_invariants(A, B, tol);
  for (auto& v : {ab.alpha[0], ab.alpha[1], ab.beta[0], ab.beta[1]})
    if (!v || std::abs(*v) <= tol) throw Error(ErrorCode::UndefinedInvariant, "alpha/beta");
  auto t = pair_cross_ratios(A, B, tol);
  if (std::abs(t.X3) <= tol) throw Error(ErrorCode::UndefinedInvariant, "X3 vanishes");
  const Complex a1 = *ab.alpha[0], a2 = *ab.alpha[1], b1 = *ab.beta[0], b2 = *ab.beta[1];
  const Complex X1 = t.X1, X2 = t.X2, X3 = t.X3;
  using std::conj;
  auto rel = [](Complex p, Complex q, Complex rhs) {
    double s = std::max(1.0, std::abs(p) + std::abs(q) + std::abs(rhs));
    return std::abs(p + q - rhs) / s;
  };
  return {
      rel(e.eta1 * conj(a1), e.eta2 * conj(a2), -(X2 + conj(X3) * conj(X1))),
      rel(e.nu1 * conj(b1), e.nu2 * conj(b2), -(conj(X2) + X3 * conj(X1))),
      rel(e.eta1 / a1, e.eta2 / a2, -(conj(X1) + X2 / X3)),
      rel(e.nu1 / b1, e.nu2 / b2, -(conj(X1) + conj(X2) / conj(X3))),
  };
}

const char* coplanarity_name(Coplanarity c) {
  switch (c) {
    case Coplanarity::Chain: return "chain";
    case Coplanarity::TotallyReal: return "totally_real";
    case Coplanarity::Generic: return "generic";
  }
  return "?";
}

Coplanarity coplanarity_classify(const Vec4& z1, const Vec4& z2, const Vec4& z3, const Vec4& z4,
                                 double tol) {
  auto t = cross_ratio_triple(z1, z2, z3, z4, tol);
  for (Complex x : {t.X1, t.X2, t.X3})
    if (std::abs(x.imag()) > tol * (1 + std::abs(x))) return Coplanarity::Generic;
  if (std::abs(t.X1) <= tol) throw Error(ErrorCode::Inconsistent, "X1 vanishes");
  Complex q = t.X2 / t.X1;
  double s = 1 + std::abs(t.X3) + std::abs(q);
  if (std::abs(t.X3 + q) <= tol * s) return Coplanarity::Chain;
  if (std::abs(t.X3 - q) <= tol * s) return Coplanarity::TotallyReal;
  throw Error(ErrorCode::Inconsistent, "real cross-ratios satisfy neither sign relation");
}

double rel_diff(Complex p, Complex q) { return std::abs(p - q) / std::max(1.0, std::abs(p)); }

double max_mismatch(const PairInvariants& p, const PairInvariants& q) {
  if (p.alpha_index != q.alpha_index || p.beta_index != q.beta_index)
    return std::numeric_limits<double>::infinity();
  double m = 0;
  for (auto [u, v] : {std::pair{p.tauA, q.tauA}, {p.tauB, q.tauB}, {Complex(p.sigmaA), Complex(q.sigmaA)},
                      {Complex(p.sigmaB), Complex(q.sigmaB)}, {p.cross_ratios.X1, q.cross_ratios.X1},
                      {p.cross_ratios.X2, q.cross_ratios.X2}, {p.cross_ratios.X3, q.cross_ratios.X3},
                      {p.alpha, q.alpha}, {p.beta, q.beta}})
    m = std::max(m, rel_diff(u, v));
  return m;
}

}  // namespace chyp
