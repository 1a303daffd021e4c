#include "chyp/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "chyp/serialize.hpp"
#include "chyp/verify.hpp"

namespace chyp {

namespace {

constexpr int kOk = 0, kValidation = 2, kNumerical = 3;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("CHYP_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "CHYP_SEED is not an unsigned integer");
    }
  }
  return 42;
}

Json classify_report(const GroupElement& g, double tol) {
  auto c = classify_isometry(g, tol);
  Json j = to_json(c);
  if (c.kind == IsometryKind::Loxodromic) {
    auto d = decompose_loxodromic(g, tol);
    j["r"] = d.r;
    j["theta"] = d.theta;
    j["phi"] = d.phi;
    j["frame"] = to_json(d.frame);
    j["decomposition_residual"] = d.residual;
    j["degenerate_unit"] = d.degenerate_unit;
  }
  auto t = trace_invariants(g);
  j["tau"] = to_json(t.tau);
  j["sigma"] = t.sigma;
  return j;
}

Json check_pair(const GroupElement& a, const GroupElement& b, double tol) {
  auto dA = decompose_loxodromic(a, tol), dB = decompose_loxodromic(b, tol);
  Json j;
  auto rep = is_nonsingular(dA, dB);
  j["nonsingular"] = to_json(rep);
  try {
    j["cross_ratios"] = to_json(pair_cross_ratios(dA, dB, tol));
  } catch (const Error& e) {
    j["cross_ratios"] = {{"error", error_name(e.code())}};
  }
  try {
    j["eta"] = to_json(eta_invariants(dA, dB, tol));
  } catch (const Error& e) {
    j["eta"] = {{"error", error_name(e.code())}};
  }
  auto w = reducibility_witness(dA, dB);
  j["reducibility"] = w ? to_json(*w) : Json(nullptr);
  if (rep.overall) {
    auto r = identity_relations(dA, dB, tol);
    j["identity_residuals"] = Json(std::vector<double>(r.begin(), r.end()));
  }
  return j;
}

Json check_points(const Json& in, double tol) {
  const Json& pts = in.is_object() && in.contains("points") ? in["points"] : in;
  if (!pts.is_array() || pts.size() != 4)
    throw Error(ErrorCode::ParseError, "expected 4 boundary points");
  std::array<Vec4, 4> z;
  for (int k = 0; k < 4; ++k) z[k] = BoundaryPoint::from_lift(vec_from_json(pts[k]), tol).lift;
  Json j;
  j["cross_ratios"] = to_json(cross_ratio_triple(z[0], z[1], z[2], z[3], tol));
  j["cartan"] = cartan_invariant(z[0], z[1], z[2], tol);
  j["coplanarity"] = coplanarity_name(coplanarity_classify(z[0], z[1], z[2], z[3]));
  try {
    auto r = angle_relations(z[0], z[1], z[2], z[3], tol);
    j["angle_relations"] = {{"sum_residual", r.sum_residual},
                            {"difference_residual", r.difference_residual},
                            {"near_real_warning", r.near_real_warning}};
  } catch (const Error& e) {
    j["angle_relations"] = {{"error", error_name(e.code())}};
  }
  return j;
}

Json sample_corpus(const std::string& kind, int count, std::uint64_t seed, int genus) {
  Json items = Json::array();
  for (int i = 0; i < count; ++i) {
    SamplerConfig cfg;
    cfg.seed = derive_seed(seed, i);
    Sampler s(cfg);
    if (kind == "null") {
      items.push_back(to_json(s.random_null_vector()));
    } else if (kind == "group") {
      items.push_back(to_json(s.random_group_element()));
    } else if (kind == "loxodromic") {
      items.push_back(to_json(s.random_loxodromic()));
    } else if (kind == "pair") {
      auto p = s.random_nonsingular_pair();
      items.push_back({{"A", to_json(p.a)}, {"B", to_json(p.b)}, {"rejections", p.rejections}});
    } else if (kind == "planted") {
      static const ReducibilityCase kinds[4] = {ReducibilityCase::XaXb, ReducibilityCase::YaYb,
                                                ReducibilityCase::YaXb, ReducibilityCase::XaYb};
      auto p = s.planted_reducible_pair(kinds[i % 4]);
      items.push_back({{"A", to_json(p.a)},
                       {"B", to_json(p.b)},
                       {"case", reducibility_name(p.kind)},
                       {"eigenline", to_json(p.eigenline)}});
    } else if (kind == "surface") {
      Sampler local(surface_config(cfg.seed));
      items.push_back(to_json(synthetic_surface(genus, local)));
    } else {
      throw Error(ErrorCode::ParseError, "unknown sample kind '" + kind + "'");
    }
  }
  return {{"kind", kind}, {"seed", seed}, {"count", count}, {"items", items}};
}

Json suite_json(const SuiteResult& r) {
  return {{"suite", r.suite},   {"seed", r.seed},     {"samples", r.samples},
          {"pass", r.pass},     {"fail", r.fail},     {"worst", r.worst},
          {"seconds", r.seconds}, {"messages", r.messages}};
}

TwistBend twist_arg(const std::vector<double>& kappa, double psi) {
  return {Complex(kappa.at(0), kappa.at(1)), psi};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex hyperbolic quasi-Fuchsian toolkit for SU(3,1)", "chyp"};
  app.require_subcommand(1);
  double tol = kDefaultTol;
  app.add_option("--tol", tol, "certification tolerance")->capture_default_str();

  std::string matrix_path, a_path, b_path, c_path, d_path, input_path, points_path;
  std::string kind = "pair", suite = "all", mode;
  int alpha_index = 0, beta_index = 0, genus = 2, count = 1, samples = 100;
  bool force_refine = false, allow_real = false;
  std::optional<std::uint64_t> seed;
  std::vector<double> kappa{0.0, 0.0};
  double psi = 0;

  auto* classify = app.add_subcommand("classify", "classify an isometry");
  classify->add_option("--matrix", matrix_path, "matrix JSON file")->required();

  auto* invariants = app.add_subcommand("invariants", "pair invariants of <A, B>");
  invariants->add_option("--a", a_path)->required();
  invariants->add_option("--b", b_path)->required();
  invariants->add_option("--alpha-index", alpha_index)->check(CLI::Range(0, 2));
  invariants->add_option("--beta-index", beta_index)->check(CLI::Range(0, 2));

  auto* reconstruct = app.add_subcommand("reconstruct", "canonical pair from invariants");
  reconstruct->add_option("--input", input_path)->required();
  reconstruct->add_flag("--refine", force_refine, "always run the refinement stage");
  reconstruct->add_flag("--allow-real-locus", allow_real);

  auto* check = app.add_subcommand("check", "variety, non-singularity and reducibility reports");
  auto* ca = check->add_option("--a", a_path);
  auto* cb = check->add_option("--b", b_path);
  auto* cp = check->add_option("--points", points_path, "4 boundary points");
  ca->needs(cb);
  cb->needs(ca);
  cp->excludes(ca);

  auto* glue = app.add_subcommand("glue", "attach two pants or close a handle");
  glue->add_option("mode", mode, "attach | handle")
      ->required()
      ->check(CLI::IsMember({"attach", "handle"}));
  glue->add_option("--a", a_path)->required();
  glue->add_option("--b", b_path)->required();
  glue->add_option("--c", c_path);
  glue->add_option("--d", d_path);
  glue->add_option("--kappa", kappa, "re im")->expected(2);
  glue->add_option("--psi", psi);

  auto* assemble = app.add_subcommand("assemble", "assemble a closed surface group");
  assemble->add_option("--genus", genus)->required()->check(CLI::PositiveNumber);
  assemble->add_option("--input", input_path)->required();

  auto* sample = app.add_subcommand("sample", "seeded corpus");
  sample->add_option("--kind", kind)->check(
      CLI::IsMember({"null", "group", "loxodromic", "pair", "planted", "surface"}));
  sample->add_option("--count", count)->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--genus", genus)->check(CLI::Range(2, 16));

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "suite name or all");
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    Json result;
    if (*classify) {
      result = classify_report(GroupElement::certify(mat_from_json(read_json_file(matrix_path)), tol), tol);
    } else if (*invariants) {
      auto a = group_from_json(read_json_file(a_path), tol);
      auto b = group_from_json(read_json_file(b_path), tol);
      result = to_json(pair_invariants(a, b, {alpha_index, beta_index}, tol));
    } else if (*reconstruct) {
      ReconstructOptions opt;
      opt.tol = tol;
      opt.force_refine = force_refine;
      opt.allow_real_locus = allow_real;
      auto p = pair_invariants_from_json(read_json_file(input_path), tol);
      result = to_json(canonical_pair_from_invariants(p, opt));
    } else if (*check) {
      if (!points_path.empty()) {
        result = check_points(read_json_file(points_path), tol);
      } else if (!a_path.empty()) {
        result = check_pair(group_from_json(read_json_file(a_path), tol),
                            group_from_json(read_json_file(b_path), tol), tol);
      } else {
        err << "check needs --a/--b or --points\n";
        return kValidation;
      }
    } else if (*glue) {
      auto a = group_from_json(read_json_file(a_path), tol);
      auto b = group_from_json(read_json_file(b_path), tol);
      TwistBend k = twist_arg(kappa, psi);
      if (mode == "attach") {
        if (c_path.empty() || d_path.empty()) {
          err << "glue attach needs --c and --d\n";
          return kValidation;
        }
        auto c = group_from_json(read_json_file(c_path), tol);
        auto d = group_from_json(read_json_file(d_path), tol);
        result = to_json(
            attach_pants(PantsGroup::make(a, b, tol), PantsGroup::make(c, d, tol), k, tol));
      } else {
        result = to_json(close_handle(a, b, k, tol));
      }
    } else if (*assemble) {
      auto in = surface_input_from_json(read_json_file(input_path), tol);
      if (in.genus != genus)
        throw Error(ErrorCode::BudgetMismatch, "input genus " + std::to_string(in.genus) +
                                                   " differs from --genus " + std::to_string(genus));
      AssembleOptions opt;
      opt.tol = tol;
      opt.reconstruct.tol = tol;
      result = to_json(assemble_surface(in, opt));
    } else if (*sample) {
      result = sample_corpus(kind, count, seed.value_or(default_seed()), genus);
    } else if (*verify) {
      std::uint64_t s = seed.value_or(default_seed());
      bool all_pass = true;
      if (suite == "all") {
        Json arr = Json::array();
        int pass = 0, fail = 0;
        for (const auto& name : suite_names()) {
          auto r = run_suite(name, samples, s);
          pass += r.pass;
          fail += r.fail;
          arr.push_back(suite_json(r));
        }
        all_pass = fail == 0;
        result = {{"suite", "all"}, {"pass", pass}, {"fail", fail}, {"suites", arr}};
      } else {
        auto r = run_suite(suite, samples, s);
        all_pass = r.fail == 0;
        result = suite_json(r);
      }
      out << dump(result) << "\n";
      return all_pass ? kOk : kNumerical;
    }
    out << dump(result) << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace chyp
