#include "chyp/reconstruction.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/MatrixFunctions>
#include <unsupported/Eigen/NumericalDiff>

#include <cmath>
#include <limits>

namespace chyp {

const char* method_name(ReconstructionMethod m) {
  return m == ReconstructionMethod::Direct ? "direct" : "refined";
}

RealizedQuadruple realize_quadruple(const CrossRatioTriple& x, RealizeOptions opt) {
  const Complex X1 = x.X1, X2 = x.X2, X3 = x.X3;
  if (!std::isfinite(std::abs(X1)) || !std::isfinite(std::abs(X2)) || !std::isfinite(std::abs(X3)))
    throw Error(ErrorCode::OffVariety, "non-finite cross-ratio");
  auto t = make_triple(X1, X2, X3, opt.tol);
  double s = t.scale();
  if (t.variety_residual > opt.tol * std::max(1.0, std::abs(X2)))
    throw Error(ErrorCode::OffVariety, "|X2| - |X1||X3| = " + std::to_string(t.variety_residual));
  if (t.inequality_slack < -opt.tol * s)
    throw Error(ErrorCode::OffVariety, "inequality slack " + std::to_string(t.inequality_slack));
  if (std::abs(X1) <= opt.tol || std::abs(X2) <= opt.tol || std::abs(X3) <= opt.tol)
    throw Error(ErrorCode::OffVariety, "vanishing cross-ratio");
  if (!opt.allow_real_locus) {
    for (Complex v : {X1, X2, X3})
      if (std::abs(v.imag()) <= opt.tol * (1 + std::abs(v)))
        throw Error(ErrorCode::RealCrossRatioLocus, "real cross-ratio");
  }

  // δ1/δ̄1 = X1 X3 / X2; the branch with cos ω ≤ 0 keeps h real.
  double om = std::arg(X1 * X3 / X2) / 2;
  if (std::cos(om) > 0) om += kPi;
  Complex d1 = std::polar(std::sqrt(std::abs(X2) / std::abs(X1)), om);
  double h2 = -2 * d1.real();
  if (h2 <= opt.tol * std::abs(d1))
    throw Error(ErrorCode::OffVariety, "degenerate configuration (h = 0)");
  double h = std::sqrt(h2);
  Complex xi4 = X2 / std::conj(d1);
  Complex p = (1.0 - X1 - X2) / h;
  double q2 = -2 * (xi4 * std::conj(X1)).real() - std::norm(p);
  double q = std::sqrt(std::max(q2, 0.0));

  RealizedQuadruple out;
  out.z1 << 1.0, h, 0.0, d1;
  out.z2 = infinity_point();
  out.z3 = origin_point();
  out.z4 << xi4, p, q, X1;
  out.q_squared = q2;
  return out;
}

namespace {

LoxodromicParameters spectrum_parameters(Complex tau, double sigma, const char* which) {
  auto e = eigenvalues_from_invariants(tau, sigma);
  double dev = 0;
  for (auto l : e) dev = std::max(dev, std::abs(std::abs(l) - 1.0));
  if (dev <= kLoxodromicBand)
    throw Error(ErrorCode::NotLoxodromic, std::string(which) + " trace data is not loxodromic");
  if (std::abs(e[1] - e[2]) < kUnitEigenvalueGap)
    throw Error(ErrorCode::DegenerateUnitEigenvalues, which);
  return loxodromic_parameters(e);
}

Mat4 frame_conjugate(const Mat4& c, const Mat4& e) { return c * e * group_inverse(c); }

// diag(t,1,1,1/t) c with t > 0 minimizing the Frobenius norm; the dilation commutes
// with the normal form of A, so it only moves the pair inside its conjugacy class.
Mat4 dilate_frame(const Mat4& c) {
  double s0 = c.row(0).squaredNorm(), s3 = c.row(3).squaredNorm();
  if (s0 == 0 || s3 == 0) return c;
  double t = std::pow(s3 / s0, 0.25);
  Mat4 out = c;
  out.row(0) *= t;
  out.row(3) /= t;
  return out;
}

}  // namespace

std::pair<GroupElement, GroupElement> direct_pair_from_invariants(const PairInvariants& P,
                                                                  ReconstructOptions opt) {
  auto pa = spectrum_parameters(P.tauA, P.sigmaA, "A");
  auto pb = spectrum_parameters(P.tauB, P.sigmaB, "B");
  if (std::abs(P.alpha) <= opt.tol) throw Error(ErrorCode::NoValidAlpha, "alpha vanishes");
  if (std::abs(P.beta) <= opt.tol) throw Error(ErrorCode::NoValidBeta, "beta vanishes");
  if ((P.alpha_index != 1 && P.alpha_index != 2) || (P.beta_index != 1 && P.beta_index != 2))
    throw Error(ErrorCode::ParseError, "alpha/beta index must be 1 or 2");

  auto quad = realize_quadruple(P.cross_ratios, {opt.tol, opt.allow_real_locus});
  Vec4 aB = quad.z1, rB = quad.z4;
  const double h = aB(1).real();
  const Complex d1 = aB(3), p = rB(1);
  const double q = rB(2).real();
  if (q <= 1e-12 * std::max(1.0, std::abs(p)))
    throw Error(ErrorCode::NotNonSingularResult, "fixed points lie on a common C2-chain");

  // β pins x_A = (0,u,v,0) in the gauge frame.
  Complex k = P.beta * std::conj(P.cross_ratios.X1) * h / std::conj(d1);
  Eigen::Vector2cd xa;
  if (P.beta_index == 1) {
    xa << 1.0, (k - std::conj(p)) / q;
  } else {
    Complex ubvb = (std::conj(p) - k) / q;
    xa << std::conj(ubvb), 1.0;
  }
  if (!xa.allFinite()) throw Error(ErrorCode::NotNonSingularResult, "beta equation degenerate");
  xa.normalize();
  const Complex u = xa(0), v = xa(1);
  Mat4 g = Mat4::Identity();
  g(1, 1) = std::conj(u);
  g(1, 2) = std::conj(v);
  g(2, 1) = -v;
  g(2, 2) = u;
  aB = g * aB;
  rB = g * rB;

  // α pins x_B (or y_B) inside {a_B, r_B}^⊥.
  Eigen::Matrix<Complex, 2, 4> m;
  m.row(0) = aB.adjoint() * form_matrix();
  m.row(1) = rB.adjoint() * form_matrix();
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 2, 4>> svd(m, Eigen::ComputeFullV);
  Vec4 f1 = svd.matrixV().col(2), f2 = svd.matrixV().col(3);
  f1 /= std::sqrt(herm_form(f1, f1).real());
  f2 -= herm_form(f2, f1) * f1;
  f2 /= std::sqrt(herm_form(f2, f2).real());
  const Vec4 o = origin_point(), inf = infinity_point();
  Complex kk = P.alpha * herm_form(aB, o) / herm_form(aB, inf);
  Eigen::Vector2cd c(herm_form(f2, o) - kk * herm_form(f2, inf),
                     -(herm_form(f1, o) - kk * herm_form(f1, inf)));
  if (c.norm() == 0.0 || !c.allFinite())
    throw Error(ErrorCode::NotNonSingularResult, "alpha equation degenerate");
  c.normalize();
  Vec4 v1 = c(0) * f1 + c(1) * f2;
  Vec4 xB, yB;
  if (P.alpha_index == 1) {
    xB = v1;
    yB = complete_frame(aB, xB, rB, 1e-12);
  } else {
    // v1 is y_B; det[a, y, w, r] = 1 means det[a, -w, y, r] = 1
    yB = v1;
    xB = -complete_frame(aB, yB, rB, 1e-12);
  }
  Mat4 cB;
  cB << aB, xB, yB, rB;
  cB = dilate_frame(normalize_det(cB));

  Mat4 eA = normal_form(pa.r, pa.theta, pa.phi).matrix();
  Mat4 eB = normal_form(pb.r, pb.theta, pb.phi).matrix();
  return {GroupElement::unchecked(eA), GroupElement::unchecked(frame_conjugate(cB, eB))};
}

namespace {

Mat4 su31_exp(const Eigen::VectorXd& p) {
  // anti-Hermitian K from 16 reals, Y = H K lies in u(3,1)
  Mat4 k = Mat4::Zero();
  int n = 0;
  for (int i = 0; i < 4; ++i) k(i, i) = Complex(0, p(n++));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Complex z(p(n), p(n + 1));
      n += 2;
      k(i, j) = z;
      k(j, i) = -std::conj(z);
    }
  Mat4 y = form_matrix() * k;
  return y.exp();
}

struct MismatchFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  using QRSolver = Eigen::ColPivHouseholderQR<JacobianType>;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const PairInvariants* target;
  Mat4 a, b0;
  double tol;

  int inputs() const { return 16; }
  // 10 mismatch components, zero-padded so the solver sees a square system
  int values() const { return 16; }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    f.setZero(16);
    Mat4 g = su31_exp(p);
    Mat4 b = g * b0 * g.inverse();
    try {
      auto da = decompose_loxodromic(GroupElement::unchecked(a), tol);
      auto db = decompose_loxodromic(GroupElement::unchecked(b), tol);
      auto ab = alpha_beta_invariants(da, db, tol);
      auto t = pair_cross_ratios(da, db, tol);
      const auto& al = ab.alpha[target->alpha_index - 1];
      const auto& be = ab.beta[target->beta_index - 1];
      if (!al || !be) throw Error(ErrorCode::UndefinedInvariant, "refinement");
      Complex d[5] = {t.X1 - target->cross_ratios.X1, t.X2 - target->cross_ratios.X2,
                      t.X3 - target->cross_ratios.X3, *al - target->alpha, *be - target->beta};
      Complex s[5] = {target->cross_ratios.X1, target->cross_ratios.X2, target->cross_ratios.X3,
                      target->alpha, target->beta};
      for (int i = 0; i < 5; ++i) {
        double w = 1.0 / std::max(1.0, std::abs(s[i]));
        f(2 * i) = d[i].real() * w;
        f(2 * i + 1) = d[i].imag() * w;
      }
    } catch (const Error&) {
      f.head(10).setConstant(1e3);
    }
    return 0;
  }
};

double record_mismatch(const PairInvariants& p, const GroupElement& a, const GroupElement& b,
                       double tol) {
  try {
    auto got = pair_invariants(a, b, {p.alpha_index, p.beta_index}, tol);
    return max_mismatch(p, got);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

CanonicalPair refine_pair(const PairInvariants& p, const GroupElement& a, const GroupElement& b0,
                          ReconstructOptions opt) {
  MismatchFunctor fn{&p, a.matrix(), b0.matrix(), opt.tol};
  Eigen::NumericalDiff<MismatchFunctor> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<MismatchFunctor>> lm(nd);
  lm.setMaxfev(opt.max_iterations * 17);
  lm.setXtol(1e-15);
  lm.setFtol(1e-20);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(16);
  lm.minimize(x);
  Mat4 g = su31_exp(x);
  GroupElement b = GroupElement::unchecked(g * b0.matrix() * g.inverse());
  CanonicalPair out{a, b, record_mismatch(p, a, b, opt.tol), ReconstructionMethod::Refined,
                    static_cast<int>(lm.iterations())};
  return out;
}

CanonicalPair canonical_pair_from_invariants(const PairInvariants& p, ReconstructOptions opt) {
  auto [a, b] = direct_pair_from_invariants(p, opt);
  CanonicalPair out{a, b, record_mismatch(p, a, b, opt.tol), ReconstructionMethod::Direct, 0};
  if (out.residual > opt.refine_threshold || opt.force_refine) {
    auto refined = refine_pair(p, a, b, opt);
    if (refined.residual < out.residual || opt.force_refine) out = refined;
  }
  if (!std::isfinite(out.residual)) {
    auto rep = is_nonsingular(out.A, out.B);
    if (!rep.overall) throw Error(ErrorCode::NotNonSingularResult, rep.failed_condition());
    throw Error(ErrorCode::NoConvergence, "invariants undefined on the built pair");
  }
  if (out.residual > opt.accept)
    throw Error(ErrorCode::NoConvergence, "best residual " + std::to_string(out.residual));
  return out;
}

ConjugacyResult pairs_conjugate(const GroupElement& a, const GroupElement& b,
                                const GroupElement& a2, const GroupElement& b2, double tol) {
  auto dA = decompose_loxodromic(a), dB = decompose_loxodromic(b);
  auto dA2 = decompose_loxodromic(a2), dB2 = decompose_loxodromic(b2);
  for (auto* pr : {&dA, &dA2}) {
    auto rep = is_nonsingular(*pr, pr == &dA ? dB : dB2);
    if (!rep.overall) throw Error(ErrorCode::NotNonSingular, rep.failed_condition());
  }
  ConjugacyResult out;
  PairInvariants p1 = pair_invariants(a, b);
  PairInvariants p2;
  try {
    p2 = pair_invariants(a2, b2, {p1.alpha_index, p1.beta_index});
  } catch (const Error&) {
    out.parameter_mismatch = std::numeric_limits<double>::infinity();
    return out;
  }
  out.parameter_mismatch = max_mismatch(p1, p2);
  if (out.parameter_mismatch > tol) return out;

  // Conjugator C = C_A2 D C_A^-1 with D diagonal in the common normal form.
  const Mat4 ca = dA.frame.matrix(), ca2 = dA2.frame.matrix();
  const Mat4 ica = group_inverse(ca), ica2 = group_inverse(ca2);
  Eigen::Vector4cd m = Eigen::Vector4cd::Ones();
  double best = -1;
  for (auto [w, w2] : {std::pair{dB.a(), dB2.a()}, {dB.rep(), dB2.rep()}, {dB.x(), dB2.x()},
                       {dB.y(), dB2.y()}}) {
    Vec4 v = ica * w, v2 = ica2 * w2;
    double cond = (v.cwiseAbs() / v.norm()).minCoeff() * (v2.cwiseAbs() / v2.norm()).minCoeff();
    if (cond > best) {
      best = cond;
      for (int k = 0; k < 4; ++k) m(k) = (v2(k) * v(3)) / (v(k) * v2(3));
    }
  }
  Complex d4 = std::pow(1.0 / (m(0) * m(1) * m(2)), 0.25);
  Mat4 d = (d4 * m).asDiagonal();
  Mat4 c = ca2 * d * ica;
  Mat4 ic = group_inverse(c);
  double ra = (c * a.matrix() * ic - a2.matrix()).norm() / std::max(1.0, a2.matrix().norm());
  double rb = (c * b.matrix() * ic - b2.matrix()).norm() / std::max(1.0, b2.matrix().norm());
  out.residual = std::max(ra, rb);
  out.conjugate = true;
  try {
    auto cg = GroupElement::certify(c, std::max(tol, 1e-9));
    if (out.residual <= 10 * tol) out.conjugator = cg;
  } catch (const Error&) {
  }
  return out;
}

}  // namespace chyp
