#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>

#include "koszul/io.hpp"
#include "koszul/random_gen.hpp"

using namespace koszul;

#ifndef KOSZUL_CLI_PATH
#define KOSZUL_CLI_PATH ""
#endif
#ifndef KOSZUL_FIXTURES_DIR
#define KOSZUL_FIXTURES_DIR "fixtures"
#endif

namespace {

std::string run_cli(const std::string& args, int* exit_code) {
  std::string cmd = std::string(KOSZUL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  *exit_code = WEXITSTATUS(status);
  return out;
}

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(KOSZUL_FIXTURES_DIR) / name;
}

}  // namespace

TEST(IO, AlgebraRoundTrip) {
  for (const char* name : {"sl2.json", "string_lie2.json", "dgla.json",
                           "abelian.json"}) {
    LoadedFile f = load_json_file(fixture(name));
    LInfinityAlgebra alg = algebra_from_json(f.body, nullptr);
    json again = algebra_to_json(alg, f.body.value("name", ""));
    LInfinityAlgebra alg2 = algebra_from_json(again, nullptr);
    json third = algebra_to_json(alg2, f.body.value("name", ""));
    EXPECT_EQ(again.dump(), third.dump()) << name;
    EXPECT_TRUE(check_jacobi(alg2).pass) << name;
  }
}

TEST(IO, Sl2FixtureContent) {
  LoadedFile f = load_json_file(fixture("sl2.json"));
  LInfinityAlgebra alg = algebra_from_json(f.body, nullptr);
  EXPECT_EQ(alg.space->dim(), 3u);
  ASSERT_NE(alg.bracket(2), nullptr);
  auto idx = [&](const char* s) {
    return static_cast<std::uint32_t>(alg.space->find(s));
  };
  EXPECT_EQ(alg.eval_bracket(2, {idx("e"), idx("f")}),
            GradedElement::basis(Shape{alg.space}, {idx("h")}));
}

TEST(IO, PoissonRoundTrip) {
  LoadedFile f = load_json_file(fixture("sl2_casimir.json"));
  LInfinityAlgebra alg = load_algebra_for(f, nullptr, nullptr);
  ShiftedPoissonStructure sps = poisson_from_json(f.body, alg, nullptr);
  json again = poisson_to_json(sps, "x", "sl2.json");
  ShiftedPoissonStructure sps2 = poisson_from_json(again, alg, nullptr);
  EXPECT_EQ(again.dump(), poisson_to_json(sps2, "x", "sl2.json").dump());
  EXPECT_TRUE(check_mc(alg, sps2).pass);
}

TEST(IO, RepresentationRoundTrip) {
  LoadedFile f = load_json_file(fixture("sl2_adjoint.json"));
  LInfinityAlgebra alg = load_algebra_for(f, nullptr, nullptr);
  Representation rep = representation_from_json(f.body, alg, nullptr);
  EXPECT_TRUE(is_representation(alg, rep.action).pass);
  json again = representation_to_json(rep, "x", "sl2.json");
  Representation rep2 = representation_from_json(again, alg, nullptr);
  // Reparsing mints fresh space objects, so compare canonical JSON forms.
  EXPECT_EQ(again.dump(),
            representation_to_json(rep2, "x", "sl2.json").dump());
  EXPECT_TRUE(is_representation(alg, rep2.action).pass);
}

TEST(IO, IntertwinerRoundTrip) {
  LoadedFile f = load_json_file(fixture("sl2.json"));
  LInfinityAlgebra alg = algebra_from_json(f.body, nullptr);
  InstanceGen gen({11, 3, -1, 1, 4, 3});
  SpaceRef v = gen.random_space("V");
  Intertwiner x = gen.random_intertwiner(alg.space, Shape{alg.space, v},
                                         Shape{v}, 1, 3);
  json j = intertwiner_to_json(x, "x", "sl2.json");
  Intertwiner y = intertwiner_from_json(j, alg, nullptr);
  // The shapes carry freshly parsed space objects; compare the JSON forms.
  EXPECT_EQ(j.dump(), intertwiner_to_json(y, "x", "sl2.json").dump());
}

TEST(IO, ValidationErrors) {
  LoadedFile f = load_json_file(fixture("sl2.json"));
  // Degree-inconsistent entry: e -> e under an arity-1 bracket (degree 1).
  json bad = f.body;
  bad["brackets"] = json::array();
  bad["brackets"].push_back(
      {{"arity", 1},
       {"entries",
        json::array({{{"inputs", json::array({"e"})},
                      {"output", json::array({{{"labels", json::array({"e"})},
                                               {"coeff", "1"}}})}}})}});
  EXPECT_THROW(algebra_from_json(bad, nullptr), io_error);

  json bad2 = f.body;
  bad2["brackets"][0]["entries"][0]["output"][0]["coeff"] = "1/0";
  EXPECT_THROW(algebra_from_json(bad2, nullptr), io_error);

  json bad3 = f.body;
  bad3["brackets"][0]["entries"][0]["inputs"][0] = "nosuch";
  EXPECT_THROW(algebra_from_json(bad3, nullptr), io_error);

  json bad4 = f.body;
  bad4["kind"] = "something_else";
  EXPECT_THROW(algebra_from_json(bad4, nullptr), io_error);
}

TEST(IO, NonCanonicalKeysWarn) {
  LoadedFile f = load_json_file(fixture("sl2.json"));
  json j = f.body;
  // (f,e) -> -h is the non-canonical spelling of (e,f) -> h.
  j["brackets"][0]["entries"] = json::array(
      {{{"inputs", json::array({"f", "e"})},
        {"output", json::array({{{"labels", json::array({"h"})},
                                 {"coeff", "-1"}}})}},
       {{"inputs", json::array({"h", "e"})},
        {"output", json::array(
                       {{{"labels", json::array({"e"})}, {"coeff", "2"}}})}},
       {{"inputs", json::array({"h", "f"})},
        {"output", json::array(
                       {{{"labels", json::array({"f"})}, {"coeff", "-2"}}})}}});
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = algebra_from_json(j, &warnings);
  EXPECT_FALSE(warnings.empty());
  auto idx = [&](const char* s) {
    return static_cast<std::uint32_t>(alg.space->find(s));
  };
  EXPECT_EQ(alg.eval_bracket(2, {idx("e"), idx("f")}),
            GradedElement::basis(Shape{alg.space}, {idx("h")}));
  EXPECT_TRUE(check_jacobi(alg).pass);
}

TEST(IO, EmptyBracketsIsAbelian) {
  json j{{"kind", "linfty_algebra"},
         {"name", "ab"},
         {"basis", json::array({{{"label", "a"}, {"degree", 0}}})},
         {"arity_cap", 3}};
  LInfinityAlgebra alg = algebra_from_json(j, nullptr);
  EXPECT_TRUE(alg.brackets.empty());
  EXPECT_TRUE(check_jacobi(alg).pass);
}

TEST(CLI, ExitCodesAndDeterminism) {
  if (std::string(KOSZUL_CLI_PATH).empty()) GTEST_SKIP();
  int code = 0;
  std::string alg = fixture("sl2.json").string();
  run_cli("check jacobi " + alg, &code);
  EXPECT_EQ(code, 0);

  // A mathematically failing input exits 1. Scaling the (e,f) entry alone
  // stays a Lie algebra, so break the (e,h) row instead.
  LoadedFile f = load_json_file(fixture("sl2.json"));
  json broken = f.body;
  broken["brackets"][0]["entries"][1]["output"][0]["coeff"] = "7";
  std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "koszul_broken.json";
  write_json_file(tmp, broken);
  run_cli("check jacobi " + tmp.string(), &code);
  EXPECT_EQ(code, 1);

  // A malformed input exits 2.
  std::filesystem::path garbage =
      std::filesystem::temp_directory_path() / "koszul_garbage.json";
  {
    std::ofstream out(garbage);
    out << "{ not json";
  }
  run_cli("check jacobi " + garbage.string(), &code);
  EXPECT_EQ(code, 2);

  // Structured reports are byte-identical apart from the wall time.
  auto strip = [](std::string s) {
    json j = json::parse(s);
    j.erase("wall_ms");
    return j.dump();
  };
  std::string a =
      run_cli("check poisson " + fixture("sl2_casimir.json").string() +
                  " --format structured --seed 5",
              &code);
  EXPECT_EQ(code, 0);
  std::string b =
      run_cli("check poisson " + fixture("sl2_casimir.json").string() +
                  " --format structured --seed 5",
              &code);
  EXPECT_EQ(strip(a), strip(b));
}

TEST(CLI, SolvedFixturesPassOnDisk) {
  if (std::string(KOSZUL_CLI_PATH).empty()) GTEST_SKIP();
  int code = 0;
  run_cli("check poisson " + fixture("string_lie2_poisson.json").string(),
          &code);
  EXPECT_EQ(code, 0);
  run_cli("check poisson " + fixture("dgla_poisson.json").string(), &code);
  EXPECT_EQ(code, 0);
  run_cli("check rep " + fixture("sl2_adjoint.json").string(), &code);
  EXPECT_EQ(code, 0);
}
