#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support/fixtures.hpp"
#include "termlat/cli.hpp"

namespace termlat::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("TERMLAT_SIG");
    dir_ = fs::temp_directory_path() /
           ("termlat_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv("TERMLAT_SIG");
    fs::remove_all(dir_);
  }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  fs::path dir_;
};

TEST(FormatDegree, TrimsTrailingZeros) {
  EXPECT_EQ(format_degree(0.6), "0.6");
  EXPECT_EQ(format_degree(1.0), "1");
  EXPECT_EQ(format_degree(0.25), "0.25");
  EXPECT_EQ(format_degree(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_degree(0.0), "0");
  EXPECT_EQ(format_degree(0.8 * 0.9 * 0.7 * 0.9 * 0.6), "0.27216");
}

TEST_F(CliTest, MixedArityJson) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  const CliRun r = run_cli({"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig, "--mode",
                         "full", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "SOLVED");
  EXPECT_NEAR(j["degree"].get<double>(), 0.6, 1e-9);
  EXPECT_EQ(j["substitution"]["Y"], "c");
  EXPECT_EQ(j["substitution"]["Z"], "c");
  EXPECT_EQ(j["substitution"].size(), 2u);
  ASSERT_EQ(j["trace"].size(), 8u);
  EXPECT_EQ(j["trace"][0]["rule"], "Fuzzy Equation Reorientation");
  ASSERT_EQ(j["dropped_args"].size(), 1u);
  EXPECT_EQ(j["dropped_args"][0]["term"], "X");
}

TEST_F(CliTest, DefaultModeWithSignatureIsFull) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  const CliRun r = run_cli({"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("degree: 0.6\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("substitution: {Z -> c, Y -> c}"), std::string::npos) << r.out;
}

TEST_F(CliTest, DefaultModeWithoutSignatureIsCrisp) {
  const CliRun r = run_cli({"unify", testing::kMixedLeft, testing::kMixedRight});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("status: CLASH"), std::string::npos) << r.out;
}

TEST_F(CliTest, SignatureFromEnvironment) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  setenv("TERMLAT_SIG", sig.c_str(), 1);
  const CliRun r = run_cli({"unify", testing::kMixedLeft, testing::kMixedRight});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, TraceLines) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  const CliRun r = run_cli({"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig, "--trace"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4. Generic Weak Term Decomposition: a = b ==> {} [0.8 -> 0.7]"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("8. Variable Elimination: Y = c ==> {Z = c, Y = c} [0.6 -> 0.6]"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, GeneralizeCrisp) {
  const CliRun r = run_cli({"generalize", "f(a,b)", "f(a,c)"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "generalizer: f(a,_G0)\n"
            "sigma1: {_G0 -> b}\n"
            "sigma2: {_G0 -> c}\n"
            "degree: 1\n");
}

TEST_F(CliTest, GeneralizeJsonKeys) {
  const CliRun r = run_cli({"generalize", "f(a,b)", "f(a,c)", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key :
       {"status", "degree", "substitution", "generalizer", "sigma1", "sigma2", "trace", "dropped_args"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["generalizer"], "f(a,_G0)");
  EXPECT_EQ(j["sigma2"]["_G0"], "c");
}

TEST_F(CliTest, GeneralizeWeakGenWithVerify) {
  const std::string sig = file("weak.sig", testing::kWeakGenSignature);
  const CliRun r = run_cli({"generalize", testing::kWeakGenLeft, testing::kWeakGenRight, "--sig", sig,
                         "--mode", "weak", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("generalizer: h(_G0,_G1,f(_G2,_G3))"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degree: 0.9"), std::string::npos);
  EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
}

TEST_F(CliTest, CheckSigNonInjective) {
  const std::string bad = file("bad.sig", "sim a/0 b/0 : 0.5\nsim f/2 g/3 : 0.5 [1->2, 2->2]\n");
  const CliRun r = run_cli({"check-sig", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("f/2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckSigValidAndTransitivity) {
  const std::string sig = file("ok.sig", "sim a/0 b/0 : 0.7\nsim b/0 c/0 : 0.6\n");
  CliRun r = run_cli({"check-sig", sig});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 2 entries, tnorm min\n");
  EXPECT_TRUE(r.err.empty());
  r = run_cli({"check-sig", sig, "--check-transitive"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({"unify", "a", "b"}).code, 1);
  EXPECT_EQ(run_cli({"unify", "X", "f(X)"}).code, 1);
  EXPECT_EQ(run_cli({"unify", "f(", "a"}).code, 2);
  EXPECT_EQ(run_cli({"subsumes", "f(X,Y)", "f(a,b)"}).code, 0);
  EXPECT_EQ(run_cli({"subsumes", "f(X,X)", "f(a,b)"}).code, 1);
  EXPECT_EQ(run_cli({"similarity", "f(a)", "f(a)"}).code, 0);
  EXPECT_EQ(run_cli({"similarity", "f(a)", "f(b)"}).code, 1);
  EXPECT_EQ(run_cli({"unify", "a"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"unify", "a", "b", "--mode", "fuzzy"}).code, 2);
  EXPECT_EQ(run_cli({"unify", "a", "a", "--sig", "/nonexistent.sig"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, DiagnosticsGoToErrorStream) {
  const CliRun r = run_cli({"unify", "f(", "a"});
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("offset 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, WeakModeRejectsUnequalAritySignature) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  EXPECT_EQ(run_cli({"unify", "a", "b", "--sig", sig, "--mode", "weak"}).code, 2);
}

TEST_F(CliTest, StrictArityAndReservedNames) {
  EXPECT_EQ(run_cli({"unify", "f(a)", "f(a,b)"}).code, 1);
  EXPECT_EQ(run_cli({"unify", "f(a)", "f(a,b)", "--strict-arity"}).code, 2);
  EXPECT_EQ(run_cli({"unify", "f(_G0)", "f(a)"}).code, 2);
}

TEST_F(CliTest, OccursCheckToggle) {
  const CliRun r = run_cli({"unify", "X", "f(X)", "--no-occurs-check"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("substitution: {X -> f(X)}"), std::string::npos) << r.out;
}

TEST_F(CliTest, HumanAndJsonDegreesAgree) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  const CliRun human =
      run_cli({"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig, "--tnorm", "product"});
  const CliRun json = run_cli(
      {"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig, "--tnorm", "product", "--json"});
  ASSERT_EQ(human.code, 0);
  ASSERT_EQ(json.code, 0);
  const double d = nlohmann::json::parse(json.out)["degree"].get<double>();
  EXPECT_NE(human.out.find("degree: " + format_degree(d) + "\n"), std::string::npos) << human.out;
  EXPECT_EQ(format_degree(d), "0.27216");
}

TEST_F(CliTest, VerifyPasses) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"unify", testing::kMixedLeft, testing::kMixedRight, "--sig", sig},
           {"unify", "f(X,b)", "f(a,Y)"},
           {"unify", "f(X,a)", "f(b,X)"},
           {"generalize", testing::kMixedLeft, testing::kMixedRight, "--sig", sig},
           {"similarity", "h(X,g(c,b),f(c,c))", "l(f(a,c),g(d,c))", "--sig", sig},
           {"subsumes", "f(X,Y)", "f(a,b)"}}) {
    std::vector<std::string> a = args;
    a.push_back("--verify");
    const CliRun r = run_cli(a);
    EXPECT_LE(r.code, 1) << args[1] << ": " << r.err;
    EXPECT_NE(r.out.find("verified: yes"), std::string::npos) << r.out;
  }
}

TEST_F(CliTest, BatchExamples) {
  const std::string sig = file("mixed.sig", testing::kMixedSignature);
  const std::string batch =
      file("problems.tsv", std::string("unify\t") + testing::kMixedLeft + "\t" + testing::kMixedRight +
                               "\ngeneralize\t" + testing::kWeakGenLeft + "\t" + testing::kWeakGenRight + "\n");
  const CliRun r = run_cli({"--batch", batch, "--sig", sig});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first;
  std::string second;
  std::string summary;
  std::getline(lines, first);
  std::getline(lines, second);
  std::getline(lines, summary);
  EXPECT_NE(first.find("degree=0.6\t"), std::string::npos) << first;
  EXPECT_NE(second.find("degree=0.9\t"), std::string::npos) << second;
  EXPECT_EQ(summary, "ok=2 fail=0 err=0");
}

TEST_F(CliTest, BatchEmpty) {
  const CliRun r = run_cli({"--batch", file("empty.tsv", "")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok=0 fail=0 err=0\n");
}

TEST_F(CliTest, BatchErrorIsolation) {
  const std::string batch = file("mixed.tsv",
                                 "unify\tf(X)\tf(a)\n"
                                 "unify\tf(\ta\n"
                                 "frobnicate\ta\tb\n"
                                 "just one field\n"
                                 "unify\ta\tb\n"
                                 "generalize\tf(a)\tf(b)\n");
  const CliRun r = run_cli({"--batch", batch});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("ok=2 fail=1 err=3"), std::string::npos) << r.out;
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, BatchAndCommandAreExclusive) {
  const std::string batch = file("b.tsv", "");
  EXPECT_EQ(run_cli({"unify", "a", "a", "--batch", batch}).code, 2);
  EXPECT_EQ(run_cli({"--batch", (dir_ / "missing.tsv").string()}).code, 2);
}

}  // namespace
}  // namespace termlat::cli
