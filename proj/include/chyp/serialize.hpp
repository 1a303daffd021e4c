#pragma once

#include <string>

#include "json.hpp"

#include "chyp/gluing.hpp"
#include "chyp/nonsingular.hpp"

namespace chyp {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const Vec4& v);
Json to_json(const Mat4& m);
Json to_json(const GroupElement& g);
Json to_json(const IsometryClass& c);
Json to_json(const LoxodromicDecomposition& d);
Json to_json(const TraceInvariants& t);
Json to_json(const CrossRatioTriple& t);
Json to_json(const PairInvariants& p);
Json to_json(const EtaSet& e);
Json to_json(const NonSingularityReport& r);
Json to_json(const CanonicalPair& c);
Json to_json(const TwistBend& t);
Json to_json(const BudgetReport& b);
Json to_json(const SurfaceInput& s);
Json to_json(const SurfaceRep& s);
Json to_json(const ReducibilityWitness& w);
Json to_json(const FourHoledGroup& f);
Json to_json(const OneHandleGroup& h);

Complex complex_from_json(const Json& j);
Vec4 vec_from_json(const Json& j);
Mat4 mat_from_json(const Json& j);
GroupElement group_from_json(const Json& j, double tol = kDefaultTol);
PairInvariants pair_invariants_from_json(const Json& j, double tol = kDefaultTol);
TwistBend twist_from_json(const Json& j);
SurfaceInput surface_input_from_json(const Json& j, double tol = kDefaultTol);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
std::string dump(const Json& j);

}  // namespace chyp
