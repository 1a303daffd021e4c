#pragma once

#include <array>
#include <optional>
#include <span>

#include "chyp/types.hpp"

namespace chyp {

// H with <z,w> = w* H z = z1 w̄4 + z2 w̄2 + z3 w̄3 + z4 w̄1.
const Mat4& form_matrix();
Vec4 infinity_point();  // e1
Vec4 origin_point();    // e4
Vec4 basis_vector(int k);  // 0-based

Complex herm_form(const Vec4& z, const Vec4& w);

enum class VectorSign { Positive, Negative, Null };
const char* sign_name(VectorSign s);

struct VectorClass {
  VectorSign sign;
  double value;  // <z,z>
  double tol;
};

VectorClass classify_vector(const Vec4& z, double tol = kDefaultTol);

class GroupElement {
 public:
  // Checks ||M*HM - H|| and |det M - 1| against tol scaled by max(1, ||M||_F^2 / 4)
  // (squared for the determinant); throws NotInGroup otherwise.
  static GroupElement certify(const Mat4& m, double tol = kDefaultTol);
  // Residuals are computed, no throw. certified() reports the default-tolerance verdict.
  static GroupElement unchecked(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  bool certified() const { return certified_; }
  double form_residual() const { return form_res_; }
  double det_residual() const { return det_res_; }
  double scale() const { return scale_; }

  // H A* H, exact for group elements.
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
  Vec4 operator*(const Vec4& v) const { return m_ * v; }
  GroupElement conjugated_by(const GroupElement& c) const;  // c A c^-1

 private:
  explicit GroupElement(const Mat4& m);
  Mat4 m_;
  double form_res_ = 0, det_res_ = 0, scale_ = 1;
  bool certified_ = false;
};

// inverse of a group element computed as H A* H without certification
Mat4 group_inverse(const Mat4& a);

struct BoundaryPoint {
  Vec4 lift;
  static BoundaryPoint from_lift(const Vec4& z, double tol = kDefaultTol);
};

Vec4 standard_lift(Complex z1, Complex z2, Complex z3, double tol = kDefaultTol);

double bergman_distance(const Vec4& z, const Vec4& w, double tol = kDefaultTol);

Vec4 complete_frame(const Vec4& c1, const Vec4& c2, const Vec4& c4, double tol = kDefaultTol);

struct Frame {
  Vec4 a, x, y, r;
  Mat4 matrix() const;
};

// Seeds are projected onto {a,r}^⊥ and taken in order, skipping near-null projections.
// Without seeds the standard basis e2, e3, e1, e4 is used.
Frame indefinite_gram_schmidt(const Vec4& a, const Vec4& r, std::span<const Vec4> seeds = {},
                              double tol = kDefaultTol);

// Multiplies m by the fourth root of 1/det with argument in (-pi/4, pi/4].
Mat4 normalize_det(const Mat4& m);

// Projective distance between two lines, as an angle in [0, pi/2].
double line_angle(const Vec4& u, const Vec4& v);

}  // namespace chyp
