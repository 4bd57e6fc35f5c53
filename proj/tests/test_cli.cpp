#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fg/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = fg::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

const char* kCut =
    "PARAMS x y\n"
    "VARS mu1 mu2\n"
    "INTERVAL s X: y x^6 y M: mu1 mu2\n"
    "ALPHA mu1 = b a^6\n"
    "ALPHA mu2 = b\n"
    "BETA x = a\n"
    "BETA y = b\n";

}  // namespace

TEST(Cli, Word) {
  auto r = run({"word", "reduce", "a a^-1 b"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "b\n");
  r = run({"word", "cyclic", "x^-1 a x"});
  EXPECT_EQ(r.out, "core a\nconjugator x\n");
  r = run({"word", "root", "a b a b"});
  EXPECT_EQ(r.out, "root a b\nexponent 2\n");
  r = run({"word", "reduce", "a^"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, Gamma) {
  auto r = run({"gamma", "apply", "--demo2", "--p", "1,1,1,1", "--word", "x", "--beta", "x=a;y=b"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a b a a b a b a\n");
  r = run({"gamma", "seq", "--m", "0", "--n", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("K 3\n", 0), 0u);
}

TEST(Cli, Equation) {
  const std::string eq = "quad orient n=1 m=0 d=1 rhs=a^-1 b^-1 a b";
  EXPECT_EQ(run({"eq", "check", "--eq", eq, "--beta", "x1=a;y1=b"}).code, 0);
  EXPECT_EQ(run({"eq", "check", "--eq", eq, "--beta", "x1=a;y1=a"}).code, 1);
  EXPECT_EQ(run({"eq", "check", "--eq", eq, "--beta", "x1=a"}).code, 2);
}

TEST(Cli, Decomposition) {
  auto r = run({"decomp", "stable", "--period", "a", "--min-q", "1", "--word", "b a^6 b"});
  EXPECT_EQ(r.out, "[b a][A^4][a b]\n");
  r = run({"decomp", "nlarge", "--period", "a", "--N", "3", "--word", "b a^2 b"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NoLargeOccurrence"), std::string::npos);
}

TEST(Cli, Cut) {
  std::string f = temp_file("fg_cli_cut.txt", kCut);
  auto r = run({"cut", "verify", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict PASS"), std::string::npos);
  r = run({"cut", "tstar", f, "--period", "x", "--N", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("INTERVAL s.2 X: x y M: nu2 mu2"), std::string::npos);
  r = run({"cut", "export-ge", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("V:", 0), 0u);
  r = run({"cut", "synth", "--shape", "collapse", "--seed", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"cut", "synth", "--shape", "collapse", "--seed", "3"}).out, r.out);
  std::string bad = temp_file("fg_cli_bad.txt", "INTERVAL s X: x M: mu1\nALPHA mu1 = 1\nBETA x = a\nPARAMS x\nVARS mu1\n");
  EXPECT_EQ(run({"cut", "verify", bad}).code, 1);
  EXPECT_EQ(run({"cut", "verify", "/nonexistent/file"}).code, 2);
  std::filesystem::remove(f);
  std::filesystem::remove(bad);
}

TEST(Cli, Family) {
  EXPECT_EQ(run({"family", "merz", "2,3"}).out, "b a^2 b a^3 b\n");
  auto r = run({"family", "gen", "--demo2", "--L", "4", "--p", "1,1,1,1", "--beta", "x=a;y=b"});
  EXPECT_EQ(r.code, 0);
  r = run({"family", "cancel", "--eq", "quad orient n=1 m=0 d=1 rhs=a^-1 b^-1 a b", "--beta", "x1=a;y1=b",
           "--big", "--lambda", "10"});
  EXPECT_EQ(r.code, 1);
  r = run({"family", "cancel", "--eq", "quad orient n=1 m=0 d=1 rhs=a^-1 b^-1 a b", "--beta", "x1=a;y1=b",
           "--big", "--big-n", "45", "--lambda", "10"});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, Reports) {
  auto r = run({"report", "lemma-5.4", "--n", "2", "--p", "4,5,6,7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS A2"), std::string::npos);
  EXPECT_EQ(run({"report", "lemma-5.3"}).code, 1);
  auto s1 = run({"--format", "structured", "report", "eq-sec1"});
  auto s2 = run({"report", "eq-sec1", "--format", "structured"});
  EXPECT_EQ(s1.out, s2.out);
  EXPECT_NE(s1.out.find("result=PASS"), std::string::npos);
  EXPECT_EQ(run({"report", "no-such-suite"}).code, 2);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"word", "reduce"}).code, 2);
}
