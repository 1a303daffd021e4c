#include "chyp/serialize.hpp"

#include <fstream>
#include <sstream>

namespace chyp {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vec4& v) {
  Json j = Json::array();
  for (int k = 0; k < 4; ++k) j.push_back(to_json(v(k)));
  return j;
}

Json to_json(const Mat4& m) {
  Json j = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 4; ++k) row.push_back(to_json(m(i, k)));
    j.push_back(row);
  }
  return j;
}

Json to_json(const GroupElement& g) { return to_json(g.matrix()); }

Json to_json(const IsometryClass& c) {
  Json j;
  j["class"] = kind_name(c.kind);
  Json ev = Json::array();
  for (auto l : c.eigenvalues) ev.push_back(to_json(l));
  j["eigenvalues"] = ev;
  j["modulus_deviation"] = c.modulus_deviation;
  Json fixed = Json::array();
  for (const auto& v : c.boundary_fixed) fixed.push_back(to_json(v));
  j["boundary_fixed"] = fixed;
  if (c.attracting) j["attracting"] = to_json(*c.attracting);
  if (c.repelling) j["repelling"] = to_json(*c.repelling);
  if (c.interior_fixed) j["interior_fixed"] = to_json(*c.interior_fixed);
  return j;
}

Json to_json(const LoxodromicDecomposition& d) {
  Json j;
  j["r"] = d.r;
  j["theta"] = d.theta;
  j["phi"] = d.phi;
  j["frame"] = to_json(d.frame);
  j["residual"] = d.residual;
  j["degenerate_unit"] = d.degenerate_unit;
  return j;
}

Json to_json(const TraceInvariants& t) {
  Json j;
  j["tau"] = to_json(t.tau);
  j["sigma"] = t.sigma;
  j["sigma_imag_residual"] = t.sigma_imag_residual;
  return j;
}

Json to_json(const CrossRatioTriple& t) {
  Json j;
  j["X1"] = to_json(t.X1);
  j["X2"] = to_json(t.X2);
  j["X3"] = to_json(t.X3);
  j["variety_residual"] = t.variety_residual;
  j["inequality_slack"] = t.inequality_slack;
  j["equality_case"] = t.equality_case;
  return j;
}

Json to_json(const PairInvariants& p) {
  Json j;
  j["tauA"] = to_json(p.tauA);
  j["tauB"] = to_json(p.tauB);
  j["sigmaA"] = p.sigmaA;
  j["sigmaB"] = p.sigmaB;
  j["X1"] = to_json(p.cross_ratios.X1);
  j["X2"] = to_json(p.cross_ratios.X2);
  j["X3"] = to_json(p.cross_ratios.X3);
  j["alpha"] = {{"index", p.alpha_index}, {"value", to_json(p.alpha)}};
  j["beta"] = {{"index", p.beta_index}, {"value", to_json(p.beta)}};
  return j;
}

Json to_json(const EtaSet& e) {
  Json j;
  j["eta1"] = to_json(e.eta1);
  j["eta2"] = to_json(e.eta2);
  j["nu1"] = to_json(e.nu1);
  j["nu2"] = to_json(e.nu2);
  j["zeta0"] = {{"num", to_json(e.zeta0.num)}, {"den", to_json(e.zeta0.den)}};
  return j;
}

Json to_json(const NonSingularityReport& r) {
  Json j;
  j["overall"] = r.overall;
  j["condition_i"] = {{"holds", r.condition_i}};
  if (r.shared_fixed_point) j["condition_i"]["shared_fixed_point"] = to_json(*r.shared_fixed_point);
  j["condition_ii"] = {{"holds", r.condition_ii}, {"singular_gap", r.chain_gap}};
  if (r.polar_vector) j["condition_ii"]["polar_vector"] = to_json(*r.polar_vector);
  j["condition_iii"] = {{"holds", r.condition_iii},
                        {"eta_nonzero", {r.eta_nonzero[0], r.eta_nonzero[1]}},
                        {"nu_nonzero", {r.nu_nonzero[0], r.nu_nonzero[1]}}};
  if (!r.overall) j["failed"] = r.failed_condition();
  return j;
}

Json to_json(const CanonicalPair& c) {
  Json j;
  j["A"] = to_json(c.A);
  j["B"] = to_json(c.B);
  j["residual"] = c.residual;
  j["method"] = method_name(c.method);
  j["iterations"] = c.iterations;
  return j;
}

Json to_json(const TwistBend& t) {
  Json j;
  j["kappa"] = to_json(t.kappa);
  j["psi"] = t.psi;
  return j;
}

Json to_json(const BudgetReport& b) {
  Json j;
  Json items = Json::array();
  for (const auto& i : b.items)
    items.push_back({{"label", i.label}, {"count", i.count}, {"reals_each", i.per_item},
                     {"reals", i.count * i.per_item}});
  j["genus"] = b.genus;
  j["itemization"] = items;
  j["total"] = b.total();
  return j;
}

Json to_json(const SurfaceInput& s) {
  Json j;
  j["genus"] = s.genus;
  Json pants = Json::array();
  for (const auto& p : s.pants) pants.push_back(to_json(p));
  j["pants"] = pants;
  Json tw = Json::array();
  for (const auto& t : s.twists) tw.push_back(to_json(t));
  j["twists"] = tw;
  return j;
}

Json to_json(const SurfaceRep& s) {
  Json j;
  j["genus"] = s.genus;
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  j["generators"] = gens;
  j["relation_residual"] = s.relation_residual;
  j["relation_center"] = to_json(s.relation_center);
  j["relation_relative"] = s.relation_relative;
  j["curve_mismatch"] = s.curve_mismatch;
  j["budget"] = s.budget.total();
  j["budget_itemization"] = to_json(s.budget)["itemization"];
  return j;
}

Json to_json(const ReducibilityWitness& w) {
  Json j;
  j["case"] = reducibility_name(w.kind);
  j["eigenvector"] = to_json(w.eigenvector);
  return j;
}

Json to_json(const FourHoledGroup& f) {
  Json j;
  Json gens = Json::array(), per = Json::array();
  for (const auto& g : f.generators) gens.push_back(to_json(g));
  for (const auto& g : f.peripherals) per.push_back(to_json(g));
  j["generators"] = gens;
  j["peripherals"] = per;
  j["twist"] = to_json(f.twist);
  j["K"] = to_json(f.K);
  j["first"] = to_json(f.first);
  j["second"] = to_json(f.second);
  j["parameter_count"] = f.parameter_count;
  return j;
}

Json to_json(const OneHandleGroup& h) {
  Json j;
  j["A"] = to_json(h.A);
  j["BK"] = to_json(h.BK);
  j["commutator"] = to_json(h.commutator);
  j["twist"] = to_json(h.twist);
  j["K"] = to_json(h.K);
  j["pants"] = to_json(h.pants);
  j["parameter_count"] = h.parameter_count;
  return j;
}

Complex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "complex must be [re, im]");
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  });
}

Vec4 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::ParseError, "vector needs 4 entries");
  Vec4 v;
  for (int k = 0; k < 4; ++k) v(k) = complex_from_json(j[k]);
  return v;
}

Mat4 mat_from_json(const Json& j) {
  const Json& m = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
  if (!m.is_array() || m.size() != 4) throw Error(ErrorCode::ParseError, "matrix needs 4 rows");
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    if (!m[i].is_array() || m[i].size() != 4)
      throw Error(ErrorCode::ParseError, "matrix row needs 4 entries");
    for (int k = 0; k < 4; ++k) out(i, k) = complex_from_json(m[i][k]);
  }
  return out;
}

GroupElement group_from_json(const Json& j, double tol) {
  return GroupElement::certify(mat_from_json(j), tol);
}

PairInvariants pair_invariants_from_json(const Json& j, double tol) {
  return guarded("pair invariants", [&] {
    PairInvariants p;
    p.tauA = complex_from_json(j.at("tauA"));
    p.tauB = complex_from_json(j.at("tauB"));
    p.sigmaA = j.at("sigmaA").get<double>();
    p.sigmaB = j.at("sigmaB").get<double>();
    p.cross_ratios = make_triple(complex_from_json(j.at("X1")), complex_from_json(j.at("X2")),
                                 complex_from_json(j.at("X3")), tol);
    p.alpha_index = j.at("alpha").at("index").get<int>();
    p.alpha = complex_from_json(j.at("alpha").at("value"));
    p.beta_index = j.at("beta").at("index").get<int>();
    p.beta = complex_from_json(j.at("beta").at("value"));
    if ((p.alpha_index != 1 && p.alpha_index != 2) || (p.beta_index != 1 && p.beta_index != 2))
      throw Error(ErrorCode::ParseError, "alpha/beta index must be 1 or 2");
    return p;
  });
}

TwistBend twist_from_json(const Json& j) {
  return guarded("twist", [&] {
    return TwistBend{complex_from_json(j.at("kappa")), j.at("psi").get<double>()};
  });
}

SurfaceInput surface_input_from_json(const Json& j, double tol) {
  return guarded("surface input", [&] {
    SurfaceInput s;
    s.genus = j.at("genus").get<int>();
    for (const auto& p : j.at("pants")) s.pants.push_back(pair_invariants_from_json(p, tol));
    for (const auto& t : j.at("twists")) s.twists.push_back(twist_from_json(t));
    return s;
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace chyp
