#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "chyp/cli.hpp"
#include "chyp/serialize.hpp"
#include "chyp/sampling.hpp"

using namespace chyp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "chyp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli((int)argv.size(), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const Json& j) {
  auto p = std::filesystem::temp_directory_path() / ("chyp_test_" + name + ".json");
  std::ofstream(p) << dump(j);
  return p.string();
}

}  // namespace

TEST(Cli, ClassifyLoxodromic) {
  auto path = temp_file("e2", to_json(normal_form(2, 0, 0)));
  auto r = run({"classify", "--matrix", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse_json(r.out);
  EXPECT_EQ(j["class"], "loxodromic");
  EXPECT_NEAR(j["r"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["theta"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, ClassifyRejectsNonGroupMatrix) {
  Mat4 m = Mat4::Identity() * 2.0;
  auto path = temp_file("bad", to_json(m));
  auto r = run({"classify", "--matrix", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotInGroup"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"classify", "--matrix", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"sample", "--kind", "teapot"}).code, 2);
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}

TEST(Cli, InvariantsAndReconstructRoundTrip) {
  Sampler s;
  auto p = s.random_nonsingular_pair();
  auto a = temp_file("a", to_json(p.a)), b = temp_file("b", to_json(p.b));
  auto r = run({"invariants", "--a", a, "--b", b});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rec = pair_invariants_from_json(parse_json(r.out));
  EXPECT_LT(max_mismatch(rec, pair_invariants(p.a, p.b)), 1e-12);

  auto in = temp_file("rec", parse_json(r.out));
  auto r2 = run({"reconstruct", "--input", in});
  ASSERT_EQ(r2.code, 0) << r2.err;
  auto j = parse_json(r2.out);
  auto a2 = group_from_json(j["A"]), b2 = group_from_json(j["B"]);
  EXPECT_LT(max_mismatch(rec, pair_invariants(a2, b2, {rec.alpha_index, rec.beta_index})), 1e-6);
}

TEST(Cli, CheckPair) {
  Sampler s;
  auto p = s.random_nonsingular_pair();
  auto r = run({"check", "--a", temp_file("ca", to_json(p.a)), "--b", temp_file("cb", to_json(p.b))});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse_json(r.out);
  EXPECT_TRUE(j["nonsingular"]["overall"].get<bool>());
  EXPECT_TRUE(j["reducibility"].is_null());
  EXPECT_EQ(run({"check"}).code, 2);
}

TEST(Cli, SampleIsSeeded) {
  auto r1 = run({"sample", "--kind", "pair", "--count", "2", "--seed", "9"});
  auto r2 = run({"sample", "--kind", "pair", "--count", "2", "--seed", "9"});
  auto r3 = run({"sample", "--kind", "pair", "--count", "2", "--seed", "10"});
  ASSERT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_NE(r1.out, r3.out);
  EXPECT_EQ(parse_json(r1.out)["items"].size(), 2u);
}

TEST(Cli, AssembleSampledSurface) {
  auto r = run({"sample", "--kind", "surface", "--genus", "2", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto path = temp_file("surface", parse_json(r.out)["items"][0]);
  auto a = run({"assemble", "--genus", "2", "--input", path});
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = parse_json(a.out);
  EXPECT_EQ(j["generators"].size(), 4u);
  EXPECT_LT(j["relation_residual"].get<double>(), 1e-6);
  EXPECT_EQ(run({"assemble", "--genus", "3", "--input", path}).code, 2);
}

TEST(Cli, GlueHandle) {
  Sampler s;
  GroupElement a = s.random_loxodromic(), b = s.random_group_element();
  while (!is_nonsingular(a, b * a.inverse() * b.inverse()).overall) {
    a = s.random_loxodromic();
    b = s.random_group_element();
  }
  auto r = run({"glue", "handle", "--a", temp_file("ha", to_json(a)), "--b", temp_file("hb", to_json(b)),
                "--kappa", "0.1", "0.2", "--psi", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(parse_json(r.out).contains("BK"));
}

TEST(Cli, VerifySuite) {
  auto r = run({"verify", "--suite", "group", "--samples", "20", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto j = parse_json(r.out);
  EXPECT_EQ(j["fail"], 0);
}

TEST(Cli, VerifyRoundTripExample) {
  auto r = run({"verify", "--suite", "roundtrip", "--samples", "200", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse_json(r.out);
  EXPECT_EQ(j["pass"], 200);
  EXPECT_EQ(j["fail"], 0);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, 2);
}

TEST(Cli, OutputReserializesByteStably) {
  Sampler s;
  auto p = s.random_nonsingular_pair();
  auto r = run({"invariants", "--a", temp_file("sa", to_json(p.a)), "--b", temp_file("sb", to_json(p.b))});
  ASSERT_EQ(r.code, 0);
  auto rec = pair_invariants_from_json(parse_json(r.out));
  EXPECT_EQ(dump(to_json(rec)) + "\n", r.out);

  auto m = run({"sample", "--kind", "group", "--seed", "5"});
  Mat4 g = mat_from_json(parse_json(m.out)["items"][0]);
  EXPECT_EQ(dump(to_json(g)), dump(parse_json(m.out)["items"][0]));
}
