#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "paraclose/cli.hpp"
#include "test_support.hpp"

using namespace paraclose;

namespace {

RunReport run(const std::string& command, const std::string& text, CommandOptions opts = {}) {
  return run_command(command, ProblemFile::parse(text), opts);
}

RunReport run_preset(const std::string& command, const std::string& preset, CommandOptions opts = {}) {
  return run(command, preset_text(preset), opts);
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

int exit_status(const std::string& args) {
  std::string cmd = std::string(PARACLOSE_BIN) + " " + args + " > /dev/null 2>&1";
  int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string temp_path(const std::string& name) {
  return (std::string(::testing::TempDir()) + "/" + name);
}

}  // namespace

// --- problem files -------------------------------------------------------------

TEST(ProblemFileTest, ParsesKeysCommentsAndLists) {
  auto pf = ProblemFile::parse(
      "# Roberts data\n"
      "field: Fp:5\n"
      "vars: x, y z\n"
      "\n"
      "f: x^3; y^3;  z^3   # generators\n"
      "h: x^2*y^2*z^2\n");
  EXPECT_EQ(pf.value_or("field", ""), "Fp:5");
  EXPECT_EQ(pf.variables(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(pf.entry("f").value, "x^3; y^3;  z^3");
  EXPECT_EQ(pf.entry("h").line, 6u);
}

TEST(ProblemFileTest, ErrorsCarryLineAndColumn) {
  try {
    ProblemFile::parse("vars: x\nnonsense line\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ProblemFile::parse("vars: x\ncolour: red\n"), ParseError);
  EXPECT_THROW(ProblemFile::parse("vars: x\nh: x\nh: x\n"), ParseError);
  EXPECT_THROW(ProblemFile::parse("h: x\n"), ParseError);
  try {
    run("membership", "vars: x, y\nf: x\nh: x +* y\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(run("membership", "vars: x\nf: x\nh: q\n"), ParseError);
  EXPECT_THROW(run("membership", "field: R\nvars: x\nf: x\nh: x\n"), ParseError);
  EXPECT_THROW(run("membership", "field: Fp:6\nvars: x\nf: x\nh: x\n"), NotPrime);
}

TEST(ProblemFileTest, PresetCorpusRoundTrips) {
  // print(parse(s)) is a fixed point for every polynomial in the presets
  for (const std::string preset : {"roberts", "roberts 5", "toric 1 0", "toric 2 1", "toric 3 2",
                                   "fermat-quadric 2 2 3", "fermat-quadric 2 3 4", "fermat-quadric 2 2 2 3",
                                   "bs-monomial", "bs-monomial 3 1"}) {
    auto pf = ProblemFile::parse(preset_text(preset));
    detail::with_field(pf, [&](auto field) {
      using F = decltype(field);
      auto ring = make_ring(field, pf.variables());
      auto tring = ring->extended({"T1", "T2", "T3"});
      for (const std::string key : {"relations", "f", "h", "params", "u", "lhs", "rhs", "ideal"}) {
        if (!pf.has(key)) continue;
        for (const auto& p : pf.polynomials(tring, key)) {
          auto printed = to_string(p);
          EXPECT_EQ(to_string(parse_polynomial(tring, printed)), printed) << preset << " " << key;
        }
      }
      return 0;
    });
  }
  EXPECT_THROW(preset_text("nope"), ParseError);
  EXPECT_THROW(preset_text("toric 0 1"), ParseError);
  EXPECT_EQ(preset_text("toric n=2 k=1"), preset_text("toric 2 1"));
  EXPECT_EQ(preset_text("toric:2:1"), preset_text("toric 2 1"));
}

// --- commands -------------------------------------------------------------------

TEST(CommandTest, MembershipExamples) {
  auto roberts = run_preset("membership", "roberts");
  EXPECT_EQ(roberts.verdict(), "not_member");
  EXPECT_EQ(roberts.exit_code, kExitVerdict);
  auto gen = run("membership", "vars: x, y\nf: x^2 + y; x*y\nh: x*y\n");
  EXPECT_EQ(gen.verdict(), "member");
  EXPECT_TRUE(gen.body["certificate_verified"].get<bool>());
  EXPECT_EQ(gen.body["certificate"]["cofactors"], Json({"0", "1"}));
}

TEST(CommandTest, ParaclassExamples) {
  auto roberts = run_preset("paraclass", "roberts");
  EXPECT_EQ(roberts.verdict(), "vanishes");
  EXPECT_EQ(roberts.body["details"]["k"], 2);
  EXPECT_TRUE(roberts.body["certificate_verified"].get<bool>());
  const auto& cert = roberts.body["certificate"];
  for (const char* key : {"k", "params", "cofactors_G", "cofactors_H", "field", "coefficient_table"}) {
    EXPECT_TRUE(cert.contains(key)) << key;
  }
  EXPECT_EQ(cert["field"], "Q");

  auto member = run("paraclass", "vars: X, Y\nf: X\nh: X\nparams: X; Y\nk_max: 4\n");
  EXPECT_EQ(member.verdict(), "inconclusive");
  EXPECT_EQ(member.exit_code, kExitInconclusive);

  auto toric = run_preset("paraclass", "toric 2 0");
  EXPECT_EQ(toric.body["details"]["relations"], Json({"x*y - z^2", "x*T1 + y*T2 - z"}));
  EXPECT_TRUE(toric.verdict() == "vanishes" || toric.verdict() == "inconclusive");
  if (toric.verdict() == "vanishes") EXPECT_TRUE(toric.body["certificate_verified"].get<bool>());
}

TEST(CommandTest, CoefficientTableFollowsSignConvention) {
  // X Y = -X^2 T1 + X (X T1 + Y): G = (-T1, 0), H = X, so C_{1,T1} = 1 and C_1 = -X
  auto r = run("paraclass", "vars: X, Y\nf: X\nh: Y\nparams: X; Y\nk_max: 2\n");
  ASSERT_EQ(r.verdict(), "vanishes");
  const auto& cert = r.body["certificate"];
  EXPECT_EQ(cert["cofactors_G"], Json({"-T1", "0"}));
  EXPECT_EQ(cert["cofactors_H"], Json({"X"}));
  const auto& table = cert["coefficient_table"];
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0]["nu"], "1");
  EXPECT_EQ(table[0]["C"], "-X");
  EXPECT_EQ(table[1]["nu"], "T1");
  EXPECT_EQ(table[1]["C_i"], Json({"1", "0"}));
}

TEST(CommandTest, RegularCertAndFlags) {
  auto r = run("regular-cert", "vars: X, Y, Z\nf: X^3; Y^3; Z^3\nh: X^2*Y^2*Z^2\n");
  EXPECT_EQ(r.verdict(), "certificate");
  EXPECT_TRUE(r.body["certificate_verified"].get<bool>());
  EXPECT_EQ(r.body["details"]["functional"]["r"], Json({2, 2, 2}));
  EXPECT_EQ(r.body["details"]["multiplier"], "1");
  auto member = run("regular-cert", "vars: X, Y\nf: X; Y\nh: X\n");
  EXPECT_EQ(member.verdict(), "h_is_member");
  auto local = run("regular-cert", "vars: X\nf: X^2 + X\nh: X\n");
  EXPECT_EQ(local.verdict(), "inconclusive");
  EXPECT_EQ(local.exit_code, kExitInconclusive);
  EXPECT_THROW(run("regular-cert", "vars: X\nrelations: X^2\nf: X\nh: 1\n"), ParseError);
}

TEST(CommandTest, TightExamples) {
  auto roberts = run_preset("tight", "roberts 5", CommandOptions{std::nullopt, 1u, std::nullopt, std::nullopt});
  EXPECT_EQ(roberts.verdict(), "not_in_closure");
  EXPECT_EQ(roberts.body["details"]["e"], 1);
  EXPECT_THROW(run_preset("tight", "roberts"), WrongCharacteristic);
  auto cubic = run("tight",
                   "field: Fp:7\nvars: x, y, z\nrelations: x^3 + y^3 + z^3\nf: x; y\nh: z^2\nsearch_degree: 2\n"
                   "e_max: 2\n");
  EXPECT_EQ(cubic.verdict(), "in_closure_up_to_bound");
  EXPECT_EQ(cubic.body["details"]["passes"], Json({true, true, true}));
}

TEST(CommandTest, BrianconSkodaReportSchema) {
  auto r = run_preset("bskoda", "bs-monomial");
  EXPECT_EQ(r.verdict(), "pass");
  const auto& d = r.body["details"];
  auto gens = d["ideal"].get<std::vector<std::string>>();
  std::sort(gens.begin(), gens.end());
  EXPECT_EQ(gens, (std::vector<std::string>{"x^2", "y^2"}));
  EXPECT_EQ(d["n"], 2);
  EXPECT_EQ(d["w"], 0);
  EXPECT_EQ(d["p"], 5);
  EXPECT_TRUE(d["violations"].empty());
  EXPECT_GT(d["checked"].get<int>(), 0);
  EXPECT_THROW(run("bskoda", "field: Fp:5\nvars: x, y\nf: x + y\n"), ArityMismatch);
}

TEST(CommandTest, IdentityExamples) {
  auto t10 = run_preset("identity", "toric 1 0");
  EXPECT_EQ(t10.verdict(), "holds");
  EXPECT_TRUE(t10.body["certificate_verified"].get<bool>());
  auto t21 = run_preset("identity", "toric 2 1");
  EXPECT_EQ(t21.verdict(), "holds");
  auto pf = ProblemFile::parse(preset_text("toric 2 1"));
  pf.set("rhs", pf.entry("rhs").value + " + 1");
  auto bad = run_command("identity", pf);
  EXPECT_EQ(bad.verdict(), "fails");
  EXPECT_EQ(bad.exit_code, kExitVerdict);
  auto plain = run("identity", "vars: x, y\nlhs: x^2*y\nrhs: 0\nideal: x*y\n");
  EXPECT_EQ(plain.verdict(), "holds");
}

TEST(CommandTest, VerifyRoundTrip) {
  auto r = run_preset("paraclass", "fermat-quadric 2 2 2 3");
  ASSERT_EQ(r.verdict(), "vanishes");
  auto doc = r.body["certificate"];
  EXPECT_EQ(doc["field"], "Fp:3");
  auto ok = cmd_verify(doc.dump());
  EXPECT_EQ(ok.verdict(), "valid");
  auto whole = cmd_verify(r.body.dump());
  EXPECT_EQ(whole.verdict(), "valid");
  doc["cofactors_H"][0] = doc["cofactors_H"][0].get<std::string>() + " + 1";
  EXPECT_EQ(cmd_verify(doc.dump()).verdict(), "invalid");
  EXPECT_THROW(cmd_verify("{not json"), ParseError);
  EXPECT_THROW(cmd_verify("{\"field\": \"Q\"}"), ParseError);
  doc["cofactors_G"].push_back("0");
  EXPECT_THROW(cmd_verify(doc.dump()), ArityMismatch);
}

TEST(CommandTest, PresetsAreDeterministic) {
  for (const std::string cmd : {"membership", "paraclass", "regular-cert"}) {
    auto a = run_preset(cmd, "roberts");
    auto b = run_preset(cmd, "roberts");
    EXPECT_EQ(without_timing(a.body).dump(), without_timing(b.body).dump()) << cmd;
  }
  auto a = run_preset("identity", "toric 3 2");
  auto b = run_preset("identity", "toric 3 2");
  EXPECT_EQ(without_timing(a.body).dump(), without_timing(b.body).dump());
}

TEST(CommandTest, OverridesTakePrecedence) {
  auto r = run("paraclass", "vars: X, Y\nf: X\nh: X\nparams: X; Y\nk_max: 4\n",
               CommandOptions{1u, std::nullopt, std::nullopt, 7u});
  EXPECT_EQ(r.body["details"]["k_max"], 1);
  EXPECT_EQ(r.body["inputs"]["seed"], 7);
}

// --- executable -------------------------------------------------------------------

TEST(ExecutableTest, ExitCodes) {
  EXPECT_EQ(exit_status("paraclass --preset roberts"), 0);
  EXPECT_EQ(exit_status("membership --preset roberts"), 0);
  EXPECT_EQ(exit_status("tight --preset 'roberts 5' --e-max 1"), 0);
  EXPECT_EQ(exit_status("paraclass --preset 'fermat-quadric 2 2 2 2' --k-max 2"), 2);
  EXPECT_EQ(exit_status("paraclass --preset nope"), 3);
  EXPECT_EQ(exit_status("paraclass --file /nonexistent/problem.txt"), 3);
  EXPECT_EQ(exit_status("tight --preset roberts"), 3);
}

TEST(ExecutableTest, JsonOutputAndVerify) {
  auto path = temp_path("roberts_report.json");
  ASSERT_EQ(exit_status("paraclass --preset roberts --json " + path), 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto doc = Json::parse(ss.str());
  EXPECT_EQ(doc["verdict"], "vanishes");
  EXPECT_EQ(doc["tool_version"], kToolVersion);
  EXPECT_TRUE(doc.contains("timing"));
  EXPECT_EQ(exit_status("verify --file " + path), 0);

  auto problem = temp_path("bad.problem");
  std::ofstream(problem) << "vars: x\nf: x\nh: x^^2\n";
  EXPECT_EQ(exit_status("membership --file " + problem), 3);
}
