#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"
#include "wlpa/cli.hpp"

using namespace wlpa;
using namespace wlpa::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string graph(const std::string& name) { return data_path("graphs/" + name); }

std::string golden(const std::string& name) { return read_file(std::string(WLPA_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST(Cli, Validate) {
  const auto r = run_cli({"validate", "--input", graph("exlpa1.wg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid: 6 vertices, 9 edges (3 weighted)\n");
}

TEST(Cli, CheckLpaSatisfied) {
  const auto r = run_cli({"check-lpa", "--input", graph("exlpa1.wg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "satisfied\n");
}

TEST(Cli, CheckLpaViolated) {
  const auto r = run_cli({"check-lpa", "--input", graph("e2loops.wg")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, golden("check_lpa_e2loops.txt"));
}

TEST(Cli, EvalFromStdin) {
  const auto r = run_cli({"eval", "a.1* a.1"}, fixture_text("loop1.wg"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v\n");
  const auto s = run_cli({"--input", graph("loop1.wg"), "eval", "a.1* a.1"});
  EXPECT_EQ(s.out, "v\n");
}

TEST(Cli, EvalPrimeField) {
  const auto r = run_cli({"eval", "--input", graph("leavitt23.wg"), "--field", "mod:7", "e1.1 e1.2*"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6 e2.1 e2.2* + 6 e3.1 e3.2*\n");
}

TEST(Cli, SpecialOverride) {
  const auto r = run_cli({"eval", "--input", graph("leavitt23.wg"), "--special", "v=e3", "e3.1 e3.2*"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-e1.1 e1.2* - e2.1 e2.2*\n");
  EXPECT_EQ(run_cli({"eval", "--input", graph("e2loops.wg"), "--special", "v=a", "v"}).code, 1);
}

TEST(Cli, Growth) {
  const auto r = run_cli({"growth", "--input", graph("e2loops.wg"), "12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("growth_e2loops.txt"));
  const auto e = run_cli({"growth", "--input", graph("e2loops.wg"), "6", "--method", "enumerate"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(r.out.substr(0, e.out.size()), e.out);
}

TEST(Cli, Transform) {
  const auto r = run_cli({"transform", "--verify", "--input", graph("exlpa1.wg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("transform_exlpa1.txt"));
  const auto bad = run_cli({"transform", "--input", graph("e2loops.wg")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("LPA2"), std::string::npos);
}

TEST(Cli, Witness) {
  const auto r = run_cli({"witness", "--input", graph("e2loops.wg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "b.2 a.1 b.2*\n");
  EXPECT_EQ(run_cli({"witness", "--input", graph("exlpa1.wg")}).code, 3);
}

TEST(Cli, BasisAndZeroDim) {
  const auto b = run_cli({"basis", "--input", graph("loop1.wg"), "2"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "v\na.1\na.1*\na.1 a.1\na.1* a.1*\n");
  const auto z = run_cli({"zero-dim", "--input", graph("e2loops.wg"), "6"});
  EXPECT_EQ(z.code, 0);
  EXPECT_EQ(z.out, golden("zero_dim_e2loops.txt"));
}

TEST(Cli, MachineFormatGoldens) {
  const std::pair<std::vector<std::string>, std::string> cases[] = {
      {{"check-lpa", "--format", "machine", "--input", graph("e2loops.wg")}, "check_lpa_e2loops.json"},
      {{"transform", "--verify", "--format", "machine", "--input", graph("exlpa1.wg")}, "transform_exlpa1.json"},
      {{"eval", "--format", "machine", "--input", graph("leavitt23.wg"), "e1.1 e1.2*"}, "eval_leavitt23.json"},
      {{"growth", "--format", "machine", "--input", graph("e2loops.wg"), "8"}, "growth_e2loops.json"},
      {{"basis", "--format", "machine", "--input", graph("intro_e.wg"), "2", "--degree", "0,0"}, "basis_intro_e.json"},
  };
  for (const auto& [args, file] : cases) {
    const auto first = run_cli(args), second = run_cli(args);
    EXPECT_EQ(first.out, second.out) << file;
    EXPECT_EQ(first.out, golden(file)) << file;
  }
}

TEST(Cli, InputErrors) {
  const auto p = run_cli({"validate"}, "vertex v\nedge a v w 1\n");
  EXPECT_EQ(p.code, 1);
  EXPECT_EQ(p.err, "error: <stdin>: line 2, column 10: unknown range vertex 'w'\n");
  EXPECT_EQ(run_cli({"validate", "--input", "/nonexistent/graph.wg"}).code, 1);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"validate", "--bogus"}).code, 1);
  EXPECT_EQ(run_cli({"check-lpa", "validate"}).code, 1);
  EXPECT_EQ(run_cli({"eval", "--input", graph("loop1.wg"), "a.1 +"}).code, 1);
  EXPECT_EQ(run_cli({"eval", "--input", graph("loop1.wg"), "--field", "mod:8", "v"}).code, 1);
  EXPECT_EQ(run_cli({"growth", "--input", graph("loop1.wg"), "3", "--method", "magic"}).code, 1);
}
