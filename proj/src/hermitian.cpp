#include "chyp/hermitian.hpp"

#include <cmath>
#include <vector>

namespace chyp {

const Mat4& form_matrix() {
  static const Mat4 h = [] {
    Mat4 m = Mat4::Zero();
    m(0, 3) = m(3, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }();
  return h;
}

Vec4 basis_vector(int k) {
  Vec4 v = Vec4::Zero();
  v(k) = 1.0;
  return v;
}

Vec4 infinity_point() { return basis_vector(0); }
Vec4 origin_point() { return basis_vector(3); }

Complex herm_form(const Vec4& z, const Vec4& w) {
  return z(0) * std::conj(w(3)) + z(1) * std::conj(w(1)) + z(2) * std::conj(w(2)) +
         z(3) * std::conj(w(0));
}

const char* sign_name(VectorSign s) {
  switch (s) {
    case VectorSign::Positive: return "positive";
    case VectorSign::Negative: return "negative";
    case VectorSign::Null: return "null";
  }
  return "?";
}

VectorClass classify_vector(const Vec4& z, double tol) {
  double n2 = z.squaredNorm();
  if (n2 == 0.0) throw Error(ErrorCode::ZeroVector, "classify_vector");
  double v = herm_form(z, z).real();
  VectorSign s = VectorSign::Null;
  if (v > tol * n2) s = VectorSign::Positive;
  else if (v < -tol * n2) s = VectorSign::Negative;
  return {s, v, tol};
}

Mat4 group_inverse(const Mat4& a) {
  const Mat4& h = form_matrix();
  return h * a.adjoint() * h;
}

GroupElement::GroupElement(const Mat4& m) : m_(m) {
  const Mat4& h = form_matrix();
  form_res_ = (m.adjoint() * h * m - h).norm();
  det_res_ = std::abs(m.determinant() - 1.0);
  scale_ = std::max(1.0, m.squaredNorm() / 4.0);
  certified_ = form_res_ <= kDefaultTol * scale_ && det_res_ <= kDefaultTol * scale_ * scale_;
}

GroupElement GroupElement::unchecked(const Mat4& m) { return GroupElement(m); }

GroupElement GroupElement::certify(const Mat4& m, double tol) {
  GroupElement g(m);
  if (!m.allFinite())
    throw Error(ErrorCode::NotInGroup, "non-finite entries");
  if (g.form_res_ > tol * g.scale_ || g.det_res_ > tol * g.scale_ * g.scale_)
    throw Error(ErrorCode::NotInGroup, "form residual " + std::to_string(g.form_res_) +
                                           ", det residual " + std::to_string(g.det_res_));
  g.certified_ = true;
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g(group_inverse(m_));
  g.certified_ = certified_ && g.certified_;
  return g;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return GroupElement(m_ * o.m_);
}

GroupElement GroupElement::conjugated_by(const GroupElement& c) const {
  return GroupElement(c.m_ * m_ * group_inverse(c.m_));
}

BoundaryPoint BoundaryPoint::from_lift(const Vec4& z, double tol) {
  if (classify_vector(z, tol).sign != VectorSign::Null)
    throw Error(ErrorCode::DegenerateSpan, "boundary point lift is not null");
  return {z};
}

Vec4 standard_lift(Complex z1, Complex z2, Complex z3, double tol) {
  double defect = 2 * z1.real() + std::norm(z2) + std::norm(z3);
  double scale = 1 + std::abs(z1) + std::norm(z2) + std::norm(z3);
  if (defect > tol * scale)
    throw Error(ErrorCode::NotInClosedDomain, "defect " + std::to_string(defect));
  Vec4 v;
  v << z1, z2, z3, 1.0;
  return v;
}

double bergman_distance(const Vec4& z, const Vec4& w, double tol) {
  auto cz = classify_vector(z, tol);
  auto cw = classify_vector(w, tol);
  if (cz.sign != VectorSign::Negative || cw.sign != VectorSign::Negative)
    throw Error(ErrorCode::NotNegative, "bergman_distance needs negative vectors");
  double c2 = std::norm(herm_form(z, w)) / (cz.value * cw.value);
  return 2 * std::acosh(std::sqrt(std::max(1.0, c2)));
}

Mat4 Frame::matrix() const {
  Mat4 m;
  m << a, x, y, r;
  return m;
}

Mat4 normalize_det(const Mat4& m) {
  Complex d = m.determinant();
  Complex inv = 1.0 / d;
  Complex w = std::pow(std::abs(d), -0.25) * std::polar(1.0, std::arg(inv) / 4);
  return m * w;
}

Vec4 complete_frame(const Vec4& c1, const Vec4& c2, const Vec4& c4, double tol) {
  Eigen::Matrix<Complex, 3, 4> m;
  m.row(0) = c1.adjoint() * form_matrix();
  m.row(1) = c2.adjoint() * form_matrix();
  m.row(2) = c4.adjoint() * form_matrix();
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 3, 4>> svd(m, Eigen::ComputeFullV);
  auto s = svd.singularValues();
  if (s(0) == 0.0 || s(2) <= tol * s(0))
    throw Error(ErrorCode::DegenerateSpan, "columns span fewer than 3 dimensions");
  Vec4 w = svd.matrixV().col(3);
  if (std::abs(herm_form(w, w)) <= tol * w.squaredNorm())
    throw Error(ErrorCode::DegenerateSpan, "orthogonal complement is null");
  Mat4 f;
  f << c1, c2, w, c4;
  Complex d = f.determinant();
  if (std::abs(d) <= tol) throw Error(ErrorCode::DegenerateSpan, "singular frame");
  return w / d;
}

Frame indefinite_gram_schmidt(const Vec4& a, const Vec4& r, std::span<const Vec4> seeds,
                              double tol) {
  double na = a.norm(), nr = r.norm();
  if (na == 0.0 || nr == 0.0) throw Error(ErrorCode::DegeneratePair, "zero vector");
  if (std::abs(herm_form(a, r)) <= tol * na * nr)
    throw Error(ErrorCode::DegeneratePair, "<a,r> vanishes");
  if (std::abs(herm_form(a, a).real()) > 1e-6 * na * na ||
      std::abs(herm_form(r, r).real()) > 1e-6 * nr * nr)
    throw Error(ErrorCode::DegeneratePair, "inputs are not null");

  Vec4 a1 = a / na;
  Vec4 r1 = r / std::conj(herm_form(a1, r));
  double t = std::sqrt(r1.norm());
  a1 *= t;
  r1 /= t;

  std::vector<Vec4> cand;
  if (seeds.empty()) {
    for (int k : {1, 2, 0, 3}) cand.push_back(basis_vector(k));
  } else {
    cand.assign(seeds.begin(), seeds.end());
    for (int k : {1, 2, 0, 3}) cand.push_back(basis_vector(k));
  }
  for (auto& v : cand) v = v - herm_form(v, r1) * a1 - herm_form(v, a1) * r1;

  // First candidate (in order) whose projection is not close to null; otherwise the best one.
  auto pick = [&](std::vector<Vec4>& vs) {
    int best = -1;
    double bestr = 0;
    for (int i = 0; i < (int)vs.size(); ++i) {
      double n2 = vs[i].squaredNorm();
      if (n2 == 0.0) continue;
      double ratio = herm_form(vs[i], vs[i]).real() / n2;
      if (ratio >= 1e-3) {
        best = i;
        break;
      }
      if (ratio > bestr) {
        best = i;
        bestr = ratio;
      }
    }
    if (best < 0) throw Error(ErrorCode::DegeneratePair, "no positive complement");
    double q = herm_form(vs[best], vs[best]).real();
    if (q <= tol * vs[best].squaredNorm())
      throw Error(ErrorCode::DegeneratePair, "no positive complement");
    Vec4 v = vs[best] / std::sqrt(q);
    vs.erase(vs.begin() + best);
    return v;
  };
  Vec4 x = pick(cand);
  for (auto& v : cand) v -= herm_form(v, x) * x;
  Vec4 y = pick(cand);

  Mat4 m;
  m << a1, x, y, r1;
  m = normalize_det(m);
  return {m.col(0), m.col(1), m.col(2), m.col(3)};
}

double line_angle(const Vec4& u, const Vec4& v) {
  Vec4 un = u.normalized(), vn = v.normalized();
  Complex c = un.dot(vn);
  double s = (vn - c * un).norm();
  return std::atan2(s, std::abs(c));
}

}  // namespace chyp
