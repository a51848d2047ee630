// End-to-end exercises of the command-line front door: golden outputs, JSON
// shapes, exit codes, and report replay.

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include <coha/coha.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string out;  // stdout and stderr interleaved
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = shell_quote(COHA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return testing::TempDir() + "coha_cli_" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  ASSERT_TRUE(out.good());
  out << text;
}

// --- mul ---------------------------------------------------------------------

TEST(CliMul, PointGoldenValuesForAllProducts) {
  RunResult prepr = run_cli("mul --quiver point --product prepr --v1 1 --v2 1 1 1");
  EXPECT_EQ(prepr.status, 0);
  EXPECT_EQ(prepr.out, "-2\ndegree: {1: 2}\n");

  RunResult crit = run_cli("mul --quiver point --product crit --v1 1 --v2 1 1 1");
  EXPECT_EQ(crit.status, 0);
  EXPECT_EQ(crit.out, "2\ndegree: {1: 2}\n");

  RunResult aux = run_cli("mul --quiver point --product aux --v1 1 --v2 1 1 1");
  EXPECT_EQ(aux.status, 0);
  EXPECT_EQ(aux.out, "4*t1 + 4*t2\ndegree: {1: 2}\n");

  RunResult aux0 =
      run_cli("mul --quiver point --product aux --loop-weight 0,0 --v1 1 --v2 1 1 1");
  EXPECT_EQ(aux0.status, 0);
  EXPECT_EQ(aux0.out, "2*t1 + 2*t2\ndegree: {1: 2}\n");

  RunResult sign = run_cli("mul --quiver point --product sign --v1 1 --v2 1 1 1");
  EXPECT_EQ(sign.status, 0);
  EXPECT_EQ(sign.out, "2*l[1,1] - 2*l[1,2]\ndegree: {1: 2}\n");
}

TEST(CliMul, CrossVertexDegreesOnA2) {
  RunResult xy = run_cli("mul --quiver a2 --product prepr --v1 1,0 --v2 0,1 1 1");
  EXPECT_EQ(xy.status, 0);
  EXPECT_EQ(xy.out, "-l[1,1] + l[2,1] + t1\ndegree: {1: 1, 2: 1}\n");

  RunResult yx = run_cli("mul --quiver a2 --product prepr --v1 0,1 --v2 1,0 1 1");
  EXPECT_EQ(yx.status, 0);
  EXPECT_EQ(yx.out, "l[1,1] - l[2,1] + t2\ndegree: {1: 1, 2: 1}\n");
}

TEST(CliMul, AcceptsNontrivialExpressions) {
  RunResult r = run_cli(
      "mul --quiver jordan --product prepr --v1 1 --v2 1 'l[1,1] + t1' '2'");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("degree: {1: 2}"), std::string::npos);
}

TEST(CliMul, JsonFormatCarriesStructuredFields) {
  RunResult r =
      run_cli("mul --quiver point --product prepr --v1 1 --v2 1 1 1 --format json");
  EXPECT_EQ(r.status, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["product"], "prepr");
  EXPECT_EQ(j["quiver"], "point");
  EXPECT_EQ(j["v1"], "{1: 1}");
  EXPECT_EQ(j["v2"], "{1: 1}");
  EXPECT_EQ(j["degree"], "{1: 2}");
  EXPECT_EQ(j["flavor"], "symmetric");
  EXPECT_EQ(j["value"], "-2");
}

// --- exit codes -----------------------------------------------------------------

TEST(CliExitCodes, MalformedExpressionIsTwo) {
  RunResult r = run_cli("mul --quiver point --v1 1 --v2 1 'l[1,' '1'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error:"), std::string::npos);
}

TEST(CliExitCodes, MissingQuiverFileIsTwo) {
  RunResult r = run_cli("mul --quiver /nonexistent/q.json --v1 1 --v2 1 1 1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("cannot find quiver file"), std::string::npos);
}

TEST(CliExitCodes, BadDimensionListIsTwo) {
  RunResult r = run_cli("mul --quiver a2 --v1 1 --v2 0,1 1 1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("--v1"), std::string::npos);
}

TEST(CliExitCodes, SymmetryViolationIsThree) {
  RunResult r = run_cli("mul --quiver point --v1 2 --v2 1 'l[1,1]' '1'");
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("error:"), std::string::npos);

  // A lambda slot outside the declared degree is also a symmetry-domain error.
  RunResult slot = run_cli("mul --quiver point --v1 1 --v2 1 'l[1,2]' '1'");
  EXPECT_EQ(slot.status, 3);
}

TEST(CliExitCodes, ExtensionNameClashIsFive) {
  const std::string path = temp_path("clash.json");
  write_file(path,
             R"({"vertices": ["1"],
                 "arrows": [{"name": "l_1", "src": "1", "tgt": "1",
                             "w1": 1, "w2": 1}]})");
  RunResult r = run_cli("extend ginzburg --quiver " + shell_quote(path));
  EXPECT_EQ(r.status, 5);
  EXPECT_NE(r.out.find("clash"), std::string::npos);
  std::remove(path.c_str());
}

TEST(CliExitCodes, UnknownSuiteIsGenericFailure) {
  RunResult r = run_cli("verify --suite bogus");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("unknown suite"), std::string::npos);
}

// --- extend and derive -------------------------------------------------------------

TEST(CliExtend, GinzburgEmitsALoadableQuiverFile) {
  RunResult r = run_cli("extend ginzburg --quiver jordan");
  EXPECT_EQ(r.status, 0);
  coha::QuiverFile f = coha::load_quiver_string(r.out);
  EXPECT_NE(f.quiver.find_arrow("x"), nullptr);
  EXPECT_NE(f.quiver.find_arrow("x_star"), nullptr);
  EXPECT_NE(f.quiver.find_arrow("l_1"), nullptr);
  EXPECT_EQ(f.cut, std::vector<std::string>{"l_1"});
  EXPECT_EQ(f.potential.canonical().terms().size(), 2u);
}

TEST(CliExtend, FramedAddsFramingVertices) {
  RunResult r = run_cli("extend framed --quiver point");
  EXPECT_EQ(r.status, 0);
  coha::QuiverFile f = coha::load_quiver_string(r.out);
  EXPECT_EQ(f.quiver.vertices(), (std::vector<std::string>{"1", "1_prime"}));
  EXPECT_NE(f.quiver.find_arrow("j_1"), nullptr);
  EXPECT_NE(f.quiver.find_arrow("i_1"), nullptr);
  EXPECT_NE(f.quiver.find_arrow("l_1"), nullptr);
}

TEST(CliDerive, SingleArrowTextOutput) {
  RunResult r = run_cli("derive --quiver conifold --arrow a01");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "d/da01: a10*b01*b10 - b10*b01*a10\n");
}

TEST(CliDerive, AllArrowsJsonOutput) {
  RunResult r = run_cli("derive --quiver conifold --format json");
  EXPECT_EQ(r.status, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 4u);
  EXPECT_EQ(j["a01"], "a10*b01*b10 - b10*b01*a10");
  EXPECT_TRUE(j.contains("b10"));
}

TEST(CliCut, ConifoldCutCheck) {
  RunResult r = run_cli("cut-check --quiver conifold");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("is_cut: true\nloop_assumption: false\n", 0), 0u) << r.out;

  RunResult j = run_cli("cut-check --quiver conifold --format json");
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["is_cut"], true);
  EXPECT_EQ(parsed["loop_assumption"], false);
  EXPECT_FALSE(parsed["violations"].empty());
}

// --- verify and report ----------------------------------------------------------------

TEST(CliVerify, EulerSuiteJsonIsByteIdenticalAcrossRuns) {
  RunResult a = run_cli("verify --suite euler --format json");
  RunResult b = run_cli("verify --suite euler --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  nlohmann::json j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["check"], "euler");
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_FALSE(j[0].contains("wall_time_ms"));

  // Timings are opt-in and excluded from the determinism contract.
  RunResult t = run_cli("verify --suite euler --format json --timings");
  nlohmann::json jt = nlohmann::json::parse(t.out);
  EXPECT_TRUE(jt[0].contains("wall_time_ms"));
}

TEST(CliVerify, QuiverFlagRunsTheCutSuiteOnly) {
  RunResult ok = run_cli("verify --suite cut --quiver conifold");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out.rfind("PASS cut-conifold quiver=conifold", 0), 0u) << ok.out;

  RunResult bad = run_cli("verify --suite euler --quiver conifold");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("cut suite only"), std::string::npos);
}

TEST(CliReport, PrettyPrintsAndReplaysSavedReports) {
  RunResult saved = run_cli("verify --suite euler --suite cut --format json");
  ASSERT_EQ(saved.status, 0);
  const std::string path = temp_path("report.json");
  write_file(path, saved.out);

  RunResult printed = run_cli("report " + shell_quote(path));
  EXPECT_EQ(printed.status, 0);
  EXPECT_NE(printed.out.find("PASS euler quiver=1-vertex"), std::string::npos);
  EXPECT_NE(printed.out.find("PASS cut-conifold quiver=conifold"), std::string::npos);

  RunResult replayed = run_cli("report " + shell_quote(path) + " --replay");
  EXPECT_EQ(replayed.status, 0);
  EXPECT_NE(replayed.out.find("REPLAY euler quiver=1-vertex: reproduced"),
            std::string::npos);
  EXPECT_NE(replayed.out.find("REPLAY cut-ginzburg quiver=random: reproduced"),
            std::string::npos);
  EXPECT_EQ(replayed.out.find("STATUS MISMATCH"), std::string::npos);
  std::remove(path.c_str());
}

TEST(CliReport, RejectsMalformedReportFiles) {
  const std::string path = temp_path("bad_report.json");
  write_file(path, "{\"not\": \"an array\"}");
  RunResult r = run_cli("report " + shell_quote(path));
  EXPECT_EQ(r.status, 2);
  std::remove(path.c_str());
}

}  // namespace
