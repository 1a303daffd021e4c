#include <gtest/gtest.h>

#include <cmath>

#include "chyp/hermitian.hpp"
#include "chyp/isometry.hpp"
#include "chyp/sampling.hpp"
#include "oracle.hpp"

using namespace chyp;
using oracle::e;
using oracle::vec;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(HermForm, Examples) {
  EXPECT_EQ(herm_form(origin_point(), infinity_point()), Complex(1));
  Vec4 z = vec(-1, 1, 1, 1);
  EXPECT_NEAR(std::abs(herm_form(z, z)), 0, 1e-15);
  EXPECT_EQ(herm_form(e(1), e(1)), Complex(1));
}

TEST(HermForm, MatchesOracleAndIsSesquilinear) {
  Sampler s;
  for (int k = 0; k < 50; ++k) {
    Vec4 z = s.random_vector(2), w = s.random_vector(2);
    Complex c = s.complex_in_box(1);
    EXPECT_LT(std::abs(herm_form(z, w) - oracle::form(z, w)), 1e-13);
    EXPECT_LT(std::abs(herm_form(c * z, w) - c * herm_form(z, w)), 1e-12);
    EXPECT_LT(std::abs(herm_form(z, c * w) - std::conj(c) * herm_form(z, w)), 1e-12);
    EXPECT_LT(std::abs(herm_form(w, z) - std::conj(herm_form(z, w))), 1e-13);
  }
}

TEST(ClassifyVector, Examples) {
  EXPECT_EQ(classify_vector(e(1)).sign, VectorSign::Positive);
  EXPECT_EQ(classify_vector(e(0)).sign, VectorSign::Null);
  auto c = classify_vector(vec(-1, 0, 0, 1));
  EXPECT_EQ(c.sign, VectorSign::Negative);
  EXPECT_NEAR(c.value, -2, 1e-15);
  EXPECT_EQ(code_of([] { classify_vector(Vec4::Zero()); }), ErrorCode::ZeroVector);
}

TEST(ClassifyVector, ScaleFree) {
  Vec4 z = vec(-1, 1, 1, 1);
  EXPECT_EQ(classify_vector(1e6 * z).sign, VectorSign::Null);
  EXPECT_EQ(classify_vector(1e-6 * z).sign, VectorSign::Null);
}

TEST(Certify, Examples) {
  auto g = GroupElement::certify(oracle::diag(2, 1, 1, 0.5));
  EXPECT_TRUE(g.certified());
  EXPECT_TRUE(GroupElement::certify(Mat4::Identity()).certified());
  EXPECT_EQ(code_of([] { GroupElement::certify(oracle::diag(2, 1, 1, 1)); }),
            ErrorCode::NotInGroup);
}

TEST(Certify, ResidualsAgreeWithOracle) {
  Sampler s;
  for (int k = 0; k < 20; ++k) {
    auto g = s.random_group_element();
    EXPECT_LE(oracle::form_residual(g.matrix()), 1e-9 * std::max(1.0, g.matrix().squaredNorm()));
    EXPECT_NEAR(std::abs(g.matrix().determinant() - 1.0), 0, 1e-8);
    Mat4 inv = g.inverse().matrix();
    EXPECT_LT((inv - oracle::inv(g.matrix())).norm(), 1e-12);
    EXPECT_LT((inv * g.matrix() - Mat4::Identity()).norm(), 1e-8);
  }
}

TEST(StandardLift, Examples) {
  Vec4 z = standard_lift(-1, 1, 1);
  EXPECT_EQ(z, vec(-1, 1, 1, 1));
  EXPECT_EQ(classify_vector(z).sign, VectorSign::Null);
  Vec4 w = standard_lift(-1, 0, 0);
  EXPECT_EQ(w, vec(-1, 0, 0, 1));
  EXPECT_EQ(classify_vector(w).sign, VectorSign::Negative);
  EXPECT_EQ(code_of([] { standard_lift(1, 0, 0); }), ErrorCode::NotInClosedDomain);
}

TEST(Bergman, Examples) {
  Vec4 z = vec(-1, 0, 0, 1);
  EXPECT_NEAR(bergman_distance(z, z), 0, 1e-7);
  Vec4 w = vec(-2, 0, 0, 0.5);
  // cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>)
  double c2 = std::norm(oracle::form(z, w)) /
              (oracle::form(z, z).real() * oracle::form(w, w).real());
  double rho = 2 * std::acosh(std::sqrt(c2));
  EXPECT_NEAR(rho, 2 * std::log(2.0), 1e-14);
  EXPECT_NEAR(bergman_distance(z, w), 2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(bergman_distance(z, Complex(0, 3) * w), 2 * std::log(2.0), 1e-12);
  // w = E(2,0,0) z: the distance is the translation length of E(2,0,0)
  EXPECT_LT((normal_form(2, 0, 0).matrix() * z - w).norm(), 1e-15);
}

TEST(Bergman, SymmetricAndInvariant) {
  Sampler s;
  for (int k = 0; k < 30; ++k) {
    Vec4 z = standard_lift(Complex(-1 - s.uniform(0, 2), s.uniform(-1, 1)), s.complex_in_box(0.5),
                           s.complex_in_box(0.5));
    Vec4 w = standard_lift(Complex(-1 - s.uniform(0, 2), s.uniform(-1, 1)), s.complex_in_box(0.5),
                           s.complex_in_box(0.5));
    auto g = s.random_group_element();
    double d = bergman_distance(z, w);
    EXPECT_NEAR(d, bergman_distance(w, z), 1e-9);
    EXPECT_NEAR(d, bergman_distance(g * z, g * w), 1e-7 * std::max(1.0, d));
  }
}

TEST(CompleteFrame, Examples) {
  EXPECT_LT((complete_frame(e(0), e(1), e(3)) - e(2)).norm(), 1e-14);
  EXPECT_EQ(code_of([] { complete_frame(e(0), e(1), e(0)); }), ErrorCode::DegenerateSpan);
}

TEST(CompleteFrame, RecompletesRandomElements) {
  Sampler s;
  for (int k = 0; k < 30; ++k) {
    Mat4 g = s.random_group_element().matrix();
    Vec4 c3 = complete_frame(g.col(0), g.col(1), g.col(3));
    EXPECT_LT((c3 - g.col(2)).norm(), 1e-8 * g.norm());
  }
}

TEST(CompleteFrame, ConjugatedFramesAgree) {
  // if C A e_i = B e_i for i = 1, 2, 4 then also for i = 3
  Sampler s;
  for (int k = 0; k < 20; ++k) {
    Mat4 a = s.random_group_element().matrix(), c = s.random_group_element().matrix();
    Mat4 ca = c * a;
    Vec4 third = complete_frame(ca.col(0), ca.col(1), ca.col(3));
    EXPECT_LT((third - ca.col(2)).norm(), 1e-8 * ca.norm());
  }
}

TEST(IndefiniteGramSchmidt, Examples) {
  Frame f = indefinite_gram_schmidt(infinity_point(), origin_point());
  Mat4 m = f.matrix();
  // up to a det-1 scalar the frame is the identity
  Complex c = m(0, 0);
  EXPECT_GT(std::abs(c), 0);
  EXPECT_LT((m / c - Mat4::Identity()).norm(), 1e-12);
  EXPECT_EQ(code_of([] { indefinite_gram_schmidt(infinity_point(), infinity_point()); }),
            ErrorCode::DegeneratePair);
}

TEST(IndefiniteGramSchmidt, RandomPairsCertify) {
  Sampler s;
  for (int k = 0; k < 30; ++k) {
    Vec4 a = s.random_null_vector(), r = s.random_null_vector();
    Frame f = indefinite_gram_schmidt(a, r);
    auto g = GroupElement::certify(f.matrix());
    EXPECT_TRUE(g.certified());
    EXPECT_LT(oracle::line_angle(f.a, a), 1e-9);
    EXPECT_LT(oracle::line_angle(f.r, r), 1e-9);
  }
}

TEST(GroupAction, PreservesFormAndNullCone) {
  Sampler s;
  for (int k = 0; k < 50; ++k) {
    auto g = s.random_group_element();
    Vec4 z = s.random_vector(1), w = s.random_vector(1);
    double tol = 10 * 1e-9 * z.norm() * w.norm() * g.matrix().squaredNorm();
    EXPECT_LT(std::abs(herm_form(g * z, g * w) - herm_form(z, w)), tol);
    Vec4 n = s.random_null_vector();
    EXPECT_EQ(classify_vector(g * n).sign, VectorSign::Null);
  }
}

TEST(NormalizeDet, RootConvention) {
  Complex c = std::polar(2.0, 0.3);
  Mat4 m = normalize_det(c * Mat4::Identity());
  EXPECT_NEAR(std::abs(m.determinant() - 1.0), 0, 1e-14);
  double arg = std::arg(m(0, 0) / c);
  EXPECT_GT(arg, -kPi / 4);
  EXPECT_LE(arg, kPi / 4);
}
