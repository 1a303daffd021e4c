#include "chyp/gluing.hpp"

#include <cmath>

namespace chyp {

GroupElement twist_bend_element(const LoxodromicDecomposition& a, Complex kappa, double psi) {
  const Mat4& q = a.frame.matrix();
  return GroupElement::unchecked(q * normal_form_complex(kappa, psi) * group_inverse(q));
}

GroupElement twist_bend_element(const GroupElement& a, const TwistBend& t) {
  return twist_bend_element(decompose_loxodromic(a), t.kappa, t.psi);
}

namespace {

void require_nonsingular(const LoxodromicDecomposition& a, const LoxodromicDecomposition& b,
                         const char* what) {
  auto rep = is_nonsingular(a, b);
  if (!rep.overall)
    throw Error(ErrorCode::NotNonSingular, std::string(what) + ": " + rep.failed_condition());
}

// m diag(t,1,1,1/t) ci over t > 0, at the t minimizing the Frobenius norm.
// Both column scalings commute with the normal form, so this only picks a representative.
Mat4 balanced(const Mat4& m, const Mat4& ci) {
  auto at = [&](double lt) {
    Mat4 d = m;
    d.col(0) *= std::exp(lt);
    d.col(3) *= std::exp(-lt);
    return Mat4(d * ci);
  };
  double lo = -30, hi = 30;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    double u = hi - gr * (hi - lo), v = lo + gr * (hi - lo);
    if (at(u).norm() < at(v).norm()) hi = v; else lo = u;
  }
  return at((lo + hi) / 2);
}

// Conjugates the pair by a dilation along the axis of A, minimizing |A|^2 + |B|^2.
std::pair<GroupElement, GroupElement> balance_pair(const GroupElement& a, const GroupElement& b) {
  const Mat4 q = decompose_loxodromic(a).frame.matrix(), qi = group_inverse(q);
  const Mat4 a0 = qi * a.matrix() * q, b0 = qi * b.matrix() * q;
  auto conj_by = [&](double lt, const Mat4& m) {
    Mat4 d = m;
    d.row(0) *= std::exp(lt);
    d.row(3) *= std::exp(-lt);
    d.col(0) *= std::exp(-lt);
    d.col(3) *= std::exp(lt);
    return Mat4(q * d * qi);
  };
  auto cost = [&](double lt) {
    return conj_by(lt, a0).squaredNorm() + conj_by(lt, b0).squaredNorm();
  };
  double lo = -30, hi = 30;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    double u = hi - gr * (hi - lo), v = lo + gr * (hi - lo);
    if (cost(u) < cost(v)) hi = v; else lo = u;
  }
  const double lt = (lo + hi) / 2;
  return {GroupElement::unchecked(conj_by(lt, a0)), GroupElement::unchecked(conj_by(lt, b0))};
}

}  // namespace

TildeInvariants tilde_invariants(const GroupElement& a, const GroupElement& b,
                                 const GroupElement& c, const TwistBend& k, double tol) {
  auto dA = decompose_loxodromic(a), dB = decompose_loxodromic(b), dC = decompose_loxodromic(c);
  require_nonsingular(dA, dB, "<A,B>");
  require_nonsingular(decompose_loxodromic(a.inverse()), dC, "<A^-1,C>");
  Vec4 w = twist_bend_element(dA, k.kappa, k.psi) * dC.rep();
  return {cross_ratio(dB.a(), dA.a(), dA.rep(), w, tol), cross_ratio(dB.a(), dA.rep(), dA.a(), w, tol),
          cross_ratio(w, dB.a(), dA.x(), dA.a(), tol), cross_ratio(w, dB.a(), dA.y(), dA.a(), tol)};
}

TwistBend invert_tilde_invariants(const GroupElement& a, const GroupElement& b,
                                  const GroupElement& c, const TildeInvariants& t,
                                  int beta_index) {
  auto dA = decompose_loxodromic(a), dB = decompose_loxodromic(b), dC = decompose_loxodromic(c);
  const Mat4 qi = group_inverse(dA.frame.matrix());
  // coordinates in the frame of A, where a_A, x_A, y_A, r_A are e1..e4
  const Vec4 bb = qi * dB.a();
  const Vec4 rc = qi * dC.rep();
  using std::conj;
  const Complex b1 = conj(bb(0)), b2 = conj(bb(1)), b3 = conj(bb(2)), b4 = conj(bb(3));
  const Complex c1 = rc(0), f1 = rc(1), j1 = rc(2), t1 = rc(3);

  const double re =
      -0.5 * std::log(std::abs((t.X1 / t.X2) * b4 * c1 / (b1 * t1)));
  const Complex w1 = std::exp(re) * c1, w4 = std::exp(-re) * t1;
  // <ŵ, b> from X̃1
  const Complex pairing = b1 * w4 / t.X1;
  double s1, s2;
  if (beta_index == 1) {
    s1 = std::arg(t.beta1 * b2 * conj(t1) / (b4 * conj(f1)));
    Complex w2 = std::polar(1.0, -s1) * f1;
    Complex rest = pairing - w1 * b4 - w2 * b2 - w4 * b1;
    s2 = std::arg(rest / (j1 * b3));
  } else {
    s2 = -std::arg(t.beta2 * b3 * conj(t1) / (b4 * conj(j1)));
    Complex w3 = std::polar(1.0, s2) * j1;
    Complex rest = pairing - w1 * b4 - w3 * b3 - w4 * b1;
    s1 = -std::arg(rest / (f1 * b2));
  }
  const double d = wrap_angle(s1 - s2);
  return {Complex(re, d / 4), wrap_angle(s2 + d / 2)};
}

PantsGroup PantsGroup::make(const GroupElement& a, const GroupElement& b, double tol) {
  GroupElement third = b.inverse() * a.inverse();
  for (const GroupElement* g : std::array<const GroupElement*, 3>{&a, &b, &third})
    if (!is_loxodromic(*g, tol))
      throw Error(ErrorCode::PeripheralNotLoxodromic, "pants peripheral is not loxodromic");
  PantsGroup p{a, b, pair_invariants(a, b, {}, tol),
               {trace_invariants(a), trace_invariants(b), trace_invariants(third)}};
  return p;
}

bool inverse_compatible(const TraceInvariants& p, const TraceInvariants& q, double tol) {
  return std::abs(q.tau - std::conj(p.tau)) <= tol * std::max(1.0, std::abs(p.tau)) &&
         std::abs(q.sigma - p.sigma) <= tol * std::max(1.0, std::abs(p.sigma));
}

FourHoledGroup attach_pants(const PantsGroup& p1, const PantsGroup& p2, const TwistBend& k,
                            double tol) {
  const GroupElement& A = p1.A;
  const GroupElement& C = p2.A;
  const GroupElement& D = p2.B;
  if (!inverse_compatible(trace_invariants(A), trace_invariants(D)))
    throw Error(ErrorCode::IncompatibleBoundary, "trace data of A and D^-1 differ");
  double off = (D.matrix() - A.inverse().matrix()).norm() / std::max(1.0, A.matrix().norm());
  if (off > 1e-6) throw Error(ErrorCode::IncompatibleBoundary, "D is not A^-1");
  auto dA = decompose_loxodromic(A, tol);
  GroupElement K = twist_bend_element(dA, k.kappa, k.psi);
  GroupElement Ki = K.inverse();
  GroupElement kc = K * C * Ki;
  FourHoledGroup out{
      {A, p1.B, kc},
      {p1.B, p1.B.inverse() * A.inverse(), kc, K * D.inverse() * C.inverse() * Ki},
      p1.invariants,
      p2.invariants,
      k,
      K,
      30};
  for (const auto& g : out.peripherals)
    if (!is_loxodromic(g, tol))
      throw Error(ErrorCode::PeripheralNotLoxodromic, "four-holed peripheral");
  return out;
}

OneHandleGroup close_handle(const GroupElement& a, const GroupElement& b, const TwistBend& k,
                            double tol) {
  GroupElement y = b * a.inverse() * b.inverse();
  auto dA = decompose_loxodromic(a, tol);
  auto dY = decompose_loxodromic(y, tol);
  require_nonsingular(dA, dY, "<A, B A^-1 B^-1>");
  if (!inverse_compatible(trace_invariants(a), trace_invariants(y)))
    throw Error(ErrorCode::IncompatibleBoundary, "tr(B A^-1 B^-1) differs from conj tr A");
  GroupElement K = twist_bend_element(dA, k.kappa, k.psi);
  GroupElement bk = b * K;
  GroupElement comm = bk * a * bk.inverse() * a.inverse();
  if (!is_loxodromic(comm, tol))
    throw Error(ErrorCode::PeripheralNotLoxodromic, "handle commutator");
  return {a, bk, comm, pair_invariants(dA, dY, {}, tol), k, K, 15};
}

GroupElement handle_conjugator(const GroupElement& x, const GroupElement& y) {
  auto dX = decompose_loxodromic(x), dY = decompose_loxodromic(y);
  // X^-1 acts on x_X by e^{-iφ_X}; match it with the eigenvalue of x_Y or y_Y
  Complex target = std::polar(1.0, -dX.phi);
  Complex ex = std::polar(1.0, dY.phi), ey = std::polar(1.0, -(2 * dY.theta + dY.phi));
  Vec4 v = dY.x(), w = dY.y();
  if (std::abs(target - ey) < std::abs(target - ex)) std::swap(v, w);
  Mat4 m;
  m << dY.rep(), v, w, dY.a();
  m.col(2) /= m.determinant();
  return GroupElement::unchecked(balanced(m, group_inverse(dX.frame.matrix())));
}

int BudgetReport::total() const {
  int t = 0;
  for (const auto& i : items) t += i.count * i.per_item;
  return t;
}

BudgetReport parameter_budget(int g) {
  return {g,
          {{"complex traces", 4 * g - 4, 2},
           {"sigma invariants", 4 * g - 4, 1},
           {"cross-ratio variety points", 2 * g - 2, 5},
           {"alpha invariants", 2 * g - 2, 2},
           {"beta invariants", 2 * g - 2, 2},
           {"twist-bend parameters", 3 * g - 3, 3},
           {"boundary constraints", 3 * g - 3, -3}}};
}

BudgetReport consumed_budget(const SurfaceInput& in) {
  int p = static_cast<int>(in.pants.size()), t = static_cast<int>(in.twists.size());
  return {in.genus,
          {{"complex traces", 2 * p, 2},
           {"sigma invariants", 2 * p, 1},
           {"cross-ratio variety points", p, 5},
           {"alpha invariants", p, 2},
           {"beta invariants", p, 2},
           {"twist-bend parameters", t, 3},
           {"boundary constraints", t, -3}}};
}

double center_distance(const Mat4& m, Complex* center) {
  double best = 1e300;
  for (Complex c : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
    double d = (m - c * Mat4::Identity()).norm();
    if (d < best) {
      best = d;
      if (center) *center = c;
    }
  }
  return best;
}

namespace {

struct Piece {
  Mat4 place = Mat4::Identity();
  GroupElement e1 = GroupElement::unchecked(Mat4::Identity());  // X or U
  GroupElement e2 = GroupElement::unchecked(Mat4::Identity());  // Y or V
  GroupElement b = GroupElement::unchecked(Mat4::Identity());   // handle generator B_i
  GroupElement global(const GroupElement& g) const {
    return GroupElement::unchecked(place * g.matrix() * place.inverse());
  }
  GroupElement third() const { return e2.inverse() * e1.inverse(); }  // Z or W
};

}  // namespace

SurfaceRep assemble_surface(const SurfaceInput& in, AssembleOptions opt) {
  const int g = in.genus;
  if (g < 2) throw Error(ErrorCode::BudgetMismatch, "genus must be at least 2");
  if ((int)in.pants.size() != 2 * g - 2 || (int)in.twists.size() != 3 * g - 3)
    throw Error(ErrorCode::BudgetMismatch,
                "expected " + std::to_string(2 * g - 2) + " pants and " +
                    std::to_string(3 * g - 3) + " twists");

  SurfaceRep rep;
  rep.genus = g;
  rep.pants = in.pants;
  rep.twists = in.twists;
  rep.budget = consumed_budget(in);
  if (rep.budget.total() != 30 * g - 30)
    throw Error(ErrorCode::BudgetMismatch, "parameter count");

  std::vector<Piece> pieces(2 * g - 2);
  for (int i = 0; i < 2 * g - 2; ++i) {
    try {
      auto cp = canonical_pair_from_invariants(in.pants[i], opt.reconstruct);
      auto [a, b] = balance_pair(cp.A, cp.B);
      pieces[i].e1 = a;
      pieces[i].e2 = b;
    } catch (const Error& e) {
      throw Error(ErrorCode::ReconstructionFailure,
                  "pants " + std::to_string(i) + ": " + e.what());
    }
  }

  auto check_curve = [&](int curve, const GroupElement& p, const GroupElement& q) {
    auto tp = trace_invariants(p), tq = trace_invariants(q);
    double m = std::max(std::abs(tq.tau - std::conj(tp.tau)) / std::max(1.0, std::abs(tp.tau)),
                        std::abs(tq.sigma - tp.sigma) / std::max(1.0, std::abs(tp.sigma)));
    rep.curve_mismatch.push_back(m);
    if (m > opt.compatibility_tol)
      throw Error(ErrorCode::IncompatibleBoundary, "curve " + std::to_string(curve));
  };

  // handle curves
  for (int i = 0; i < g; ++i) {
    Piece& h = pieces[i];
    check_curve(i, h.e1, h.e2);
    GroupElement b0 = handle_conjugator(h.e1, h.e2);
    h.b = close_handle(h.e1, b0, in.twists[i], opt.tol).BK;
  }

  // Places piece `dst` so that its element q becomes f^-1 (f already global),
  // then twists it about f. `p1b` completes the pants <f, p1b> on the placed side.
  int curve = g;
  auto glue = [&](const GroupElement& f, const GroupElement& p1b, Piece& dst,
                  const GroupElement& q_local, const GroupElement& c_local) {
    check_curve(curve, f, q_local);
    auto dF = decompose_loxodromic(f.inverse(), opt.tol);
    auto dQ = decompose_loxodromic(q_local, opt.tol);
    dst.place = balanced(dF.frame.matrix(), group_inverse(dQ.frame.matrix()));
    PantsGroup p1 = PantsGroup::make(f, p1b, opt.tol);
    PantsGroup p2 = PantsGroup::make(dst.global(c_local), dst.global(q_local), opt.tol);
    auto four = attach_pants(p1, p2, in.twists[curve], opt.tol);
    dst.place = four.K.matrix() * dst.place;
    ++curve;
  };

  Piece& h1 = pieces[0];
  if (g == 2) {
    Piece& h2 = pieces[1];
    glue(h1.third(), h1.e1, h2, h2.third(), h2.e2);
  } else {
    const int c0 = g;  // first connector index
    {
      Piece& c = pieces[c0];
      glue(h1.third(), h1.e1, c, c.e1, c.third());
    }
    for (int k = 0; k < g - 2; ++k) {
      Piece& c = pieces[c0 + k];
      Piece& h = pieces[k + 1];
      glue(c.global(c.e2), c.global(c.third()), h, h.third(), h.e2);
      if (k < g - 3) {
        Piece& nxt = pieces[c0 + k + 1];
        glue(c.global(c.third()), c.global(c.e1), nxt, nxt.e1, nxt.third());
      } else {
        Piece& hg = pieces[g - 1];
        glue(c.global(c.third()), c.global(c.e1), hg, hg.third(), hg.e2);
      }
    }
  }

  Mat4 rel = Mat4::Identity(), head = Mat4::Identity(), last;
  for (int i = 0; i < g; ++i) {
    GroupElement x = pieces[i].global(pieces[i].e1);
    GroupElement b = pieces[i].global(pieces[i].b);
    rep.generators.push_back(x);
    rep.generators.push_back(b);
    Mat4 z = b.matrix() * x.matrix() * group_inverse(b.matrix()) * group_inverse(x.matrix());
    rel = z * rel;
    if (i < g - 1) head = z * head; else last = group_inverse(z);
  }
  rep.relation_residual = center_distance(rel, &rep.relation_center);
  // Z_{g-1} ... Z_1 against c Z_g^-1, scaled by |Z_g^-1|
  rep.relation_relative = (head - rep.relation_center * last).norm() / last.norm();
  return rep;
}

}  // namespace chyp
