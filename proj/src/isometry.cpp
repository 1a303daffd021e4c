#include "chyp/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chyp {

namespace {

std::array<Complex, 4> sorted_spectrum(const Eigen::Matrix<Complex, 4, 1>& ev) {
  std::array<Complex, 4> out{ev(0), ev(1), ev(2), ev(3)};
  std::sort(out.begin(), out.end(), [](Complex p, Complex q) {
    double mp = std::abs(p), mq = std::abs(q);
    if (std::abs(mp - mq) > 1e-12 * std::max(1.0, mp)) return mp > mq;
    return std::arg(p) < std::arg(q);
  });
  return out;
}

// Right singular vectors of (A - μI) for the smallest singular values.
Eigen::Matrix<Complex, 4, Eigen::Dynamic> kernel(const Mat4& a, Complex mu, double rel) {
  Mat4 m = a - mu * Mat4::Identity();
  Eigen::JacobiSVD<Mat4> svd(m, Eigen::ComputeFullV);
  auto s = svd.singularValues();
  double thr = rel * std::max(1.0, a.norm());
  int dim = 0;
  for (int i = 3; i >= 1 && s(i) <= thr; --i) ++dim;
  if (dim == 0) dim = 1;
  return svd.matrixV().rightCols(dim);
}

Vec4 eigenvector(const Mat4& a, Complex mu) {
  Mat4 m = a - mu * Mat4::Identity();
  Eigen::JacobiSVD<Mat4> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(3);
}

Vec4 fix_phase(const Vec4& v) {
  double n = v.cwiseAbs().maxCoeff();
  for (int k = 0; k < 4; ++k) {
    if (std::abs(v(k)) > 1e-8 * n) return v * std::polar(1.0, -std::arg(v(k)));
  }
  return v;
}

}  // namespace

const char* kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Loxodromic: return "loxodromic";
  }
  return "?";
}

IsometryClass classify_isometry(const GroupElement& g, double tol) {
  const Mat4& a = g.matrix();
  Eigen::ComplexEigenSolver<Mat4> es(a, false);
  IsometryClass out;
  out.eigenvalues = sorted_spectrum(es.eigenvalues());
  double dev = 0;
  for (auto l : out.eigenvalues) dev = std::max(dev, std::abs(std::abs(l) - 1.0));
  out.modulus_deviation = dev;

  if (dev > kLoxodromicBand) {
    out.kind = IsometryKind::Loxodromic;
    Vec4 att = eigenvector(a, out.eigenvalues[0]);
    Vec4 rep = eigenvector(a, out.eigenvalues[3]);
    out.attracting = att;
    out.repelling = rep;
    out.boundary_fixed = {att, rep};
    return out;
  }
  if (dev >= kUnitBand)
    throw Error(ErrorCode::NearBoundaryAmbiguous,
                "max ||λ|-1| = " + std::to_string(dev) + " inside the tolerance band");

  // cluster unit eigenvalues
  std::vector<std::vector<Complex>> clusters;
  for (auto l : out.eigenvalues) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(c.front() - l) < 1e-6) {
        c.push_back(l);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({l});
  }
  bool negative = false;
  for (auto& c : clusters) {
    Complex mu = 0;
    for (auto l : c) mu += l;
    mu /= double(c.size());
    auto v = kernel(a, mu, 1e-6);
    Eigen::MatrixXcd gram = v.adjoint() * form_matrix() * v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ge(gram);
    for (int i = 0; i < gram.rows(); ++i) {
      double ev = ge.eigenvalues()(i);
      Vec4 w = v * ge.eigenvectors().col(i);
      if (ev < -std::max(tol, 1e-7)) {
        negative = true;
        if (!out.interior_fixed) out.interior_fixed = w;
      } else if (std::abs(ev) <= std::max(tol, 1e-7)) {
        out.boundary_fixed.push_back(w);
      }
    }
  }
  out.kind = negative ? IsometryKind::Elliptic : IsometryKind::Parabolic;
  return out;
}

bool is_loxodromic(const GroupElement& a, double tol) {
  try {
    return classify_isometry(a, tol).kind == IsometryKind::Loxodromic;
  } catch (const Error&) {
    return false;
  }
}

GroupElement normal_form(double r, double theta, double phi) {
  if (!(r > 1.0)) throw Error(ErrorCode::OutOfRegion, "r must exceed 1");
  Mat4 m = Mat4::Zero();
  m(0, 0) = std::polar(r, theta);
  m(1, 1) = std::polar(1.0, phi);
  m(2, 2) = std::polar(1.0, -(2 * theta + phi));
  m(3, 3) = std::polar(1.0 / r, theta);
  return GroupElement::unchecked(m);
}

Mat4 normal_form_complex(Complex lambda, double psi) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = std::exp(lambda);
  m(1, 1) = std::polar(1.0, -psi - lambda.imag());
  m(2, 2) = std::polar(1.0, psi - lambda.imag());
  m(3, 3) = std::exp(-std::conj(lambda));
  return m;
}

Mat4 LoxodromicDecomposition::rebuild() const {
  const Mat4& c = frame.matrix();
  return c * normal() * group_inverse(c);
}

namespace {

// φ: the largest unit-eigenvalue argument not above θ, else the smaller one.
bool first_is_phi(double theta, double p1, double p2) {
  bool ok1 = p1 <= theta, ok2 = p2 <= theta;
  if (ok1 != ok2) return ok1;
  return ok1 ? p1 >= p2 : p1 <= p2;
}

}  // namespace

LoxodromicParameters loxodromic_parameters(const std::array<Complex, 4>& eig) {
  auto s = eig;
  std::sort(s.begin(), s.end(), [](Complex p, Complex q) { return std::abs(p) > std::abs(q); });
  Complex l1 = s[0], l4 = s[3];
  double r = std::sqrt(std::abs(l1) / std::abs(l4));
  double theta = std::arg(l1 / std::abs(l1) + l4 / std::abs(l4));
  double p1 = std::arg(s[1]), p2 = std::arg(s[2]);
  return {r, theta, first_is_phi(theta, p1, p2) ? p1 : p2};
}

LoxodromicDecomposition decompose_loxodromic(const GroupElement& g, double tol) {
  auto cls = classify_isometry(g, tol);
  if (cls.kind != IsometryKind::Loxodromic)
    throw Error(ErrorCode::NotLoxodromic, kind_name(cls.kind));
  const Mat4& a = g.matrix();
  const auto& e = cls.eigenvalues;
  auto p = loxodromic_parameters(e);
  if (p.r - 1.0 < kNearParabolicGuard)
    throw Error(ErrorCode::NearParabolic, "r - 1 = " + std::to_string(p.r - 1.0));
  const bool degenerate = std::abs(e[1] - e[2]) < kUnitEigenvalueGap;

  auto unit_positive = [](Vec4 v) {
    double q = herm_form(v, v).real();
    if (q <= 0) throw Error(ErrorCode::NotLoxodromic, "unit eigenvector is not positive");
    return fix_phase(v / std::sqrt(q));
  };
  Vec4 va = fix_phase(eigenvector(a, e[0]).normalized());
  Vec4 vr = eigenvector(a, e[3]);
  Complex ar = herm_form(va, vr);
  if (std::abs(ar) == 0.0) throw Error(ErrorCode::NotLoxodromic, "fixed points orthogonal");
  vr = vr / std::conj(ar);

  Vec4 vx, vy;
  if (!degenerate) {
    bool first = first_is_phi(p.theta, std::arg(e[1]), std::arg(e[2]));
    Complex mx = first ? e[1] : e[2];
    Complex my = first ? e[2] : e[1];
    vx = unit_positive(eigenvector(a, mx));
    vy = unit_positive(eigenvector(a, my));
  } else {
    // eigenplane = {a, r}^⊥; basis from e2, e3, e1, e4 in that order
    auto proj = [&](const Vec4& v) {
      return Vec4(v - herm_form(v, vr) * va - herm_form(v, va) * vr);
    };
    std::vector<Vec4> picked;
    for (int k : {1, 2, 0, 3}) {
      Vec4 v = proj(basis_vector(k));
      for (const auto& u : picked) v -= herm_form(v, u) * u;
      if (herm_form(v, v).real() <= 1e-6 * v.squaredNorm()) continue;
      picked.push_back(unit_positive(v));
      if (picked.size() == 2) break;
    }
    if (picked.size() < 2) throw Error(ErrorCode::DegenerateUnitEigenvalues, "no eigenplane basis");
    vx = picked[0];
    vy = picked[1];
  }

  Mat4 c;
  c << va, vx, vy, vr;
  Complex d = c.determinant();
  Complex w = std::polar(1.0, std::arg(1.0 / d) / 2);
  c.col(0) *= w;
  c.col(3) *= w;

  LoxodromicDecomposition out{p.r, p.theta, p.phi, GroupElement::unchecked(c), 0.0, degenerate};
  out.residual = (out.rebuild() - a).norm();
  return out;
}

TraceInvariants trace_invariants(const Mat4& a) {
  Complex tau = a.trace();
  Complex s = 0.5 * (tau * tau - (a * a).trace());
  return {tau, s.real(), std::abs(s.imag())};
}

TraceInvariants trace_invariants(const GroupElement& a) { return trace_invariants(a.matrix()); }

std::array<Complex, 4> eigenvalues_from_invariants(Complex tau, double sigma) {
  // monic x^4 + c3 x^3 + c2 x^2 + c1 x + c0
  const Complex c3 = -tau, c2 = sigma, c1 = -std::conj(tau), c0 = 1.0;
  Mat4 comp = Mat4::Zero();
  comp(0, 0) = -c3;
  comp(0, 1) = -c2;
  comp(0, 2) = -c1;
  comp(0, 3) = -c0;
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  Eigen::ComplexEigenSolver<Mat4> es(comp, false);
  std::array<Complex, 4> z{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2),
                           es.eigenvalues()(3)};

  auto p = [&](Complex x) { return (((x + c3) * x + c2) * x + c1) * x + c0; };
  auto dp = [&](Complex x) { return ((4.0 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1; };

  // A k-fold root comes out of the eigensolver spread by about eps^(1/k); the centroid
  // of such a cluster is accurate, so clusters are collapsed before polishing.
  const double eps = std::numeric_limits<double>::epsilon();
  std::array<bool, 4> done{false, false, false, false};
  for (int k = 4; k >= 2; --k) {
    double rad = 20.0 * std::pow(eps, 1.0 / k);
    // try every subset of size k among the unassigned roots
    for (int mask = 0; mask < 16; ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      bool ok = true;
      Complex mean = 0;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i)) {
          if (done[i]) ok = false;
          mean += z[i];
        }
      if (!ok) continue;
      mean /= double(k);
      for (int i = 0; i < 4; ++i)
        if ((mask & (1 << i)) && std::abs(z[i] - mean) > rad * (1 + std::abs(mean))) ok = false;
      if (!ok) continue;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i)) {
          z[i] = mean;
          done[i] = true;
        }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (done[i]) continue;
    Complex d = dp(z[i]);
    if (std::abs(d) > 0) z[i] -= p(z[i]) / d;
  }
  return sorted_spectrum(Eigen::Matrix<Complex, 4, 1>(z[0], z[1], z[2], z[3]));
}

bool loxodromic_conjugate(const GroupElement& a, const GroupElement& b, double tol) {
  if (!is_loxodromic(a) || !is_loxodromic(b))
    throw Error(ErrorCode::NotLoxodromic, "loxodromic_conjugate");
  auto ta = trace_invariants(a), tb = trace_invariants(b);
  return std::abs(ta.tau - tb.tau) <= tol * std::max(1.0, std::abs(ta.tau)) &&
         std::abs(ta.sigma - tb.sigma) <= tol * std::max(1.0, std::abs(ta.sigma));
}

}  // namespace chyp
