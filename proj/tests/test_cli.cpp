#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "artin/cli.hpp"

using artin::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(ARTIN_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "65"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "5..3"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "two"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "2", "--field", "fp:6"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "2", "--budget", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "2", "--budget", "-1"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "4", "--steps"}).code, 2);
  EXPECT_EQ(run({"hypersurface", "--functional", "z_06"}).code, 2);
  EXPECT_EQ(run({"hypersurface", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"derivations"}).code, 2);
  const auto r = run({"verify", "--n", "1"});
  EXPECT_NE(r.err.find("[2, 64]"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, VerifySmallRange) {
  const auto r = run({"verify", "--n", "2..3"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "== n = 2, field q ==");
  EXPECT_EQ(ls.back(), "verify: all checks passed for n = 2..3");
  EXPECT_LT(r.out.find("== n = 2"), r.out.find("== n = 3"));
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, VerifyPrimeField) {
  const auto r = run({"verify", "--n", "2", "--field", "fp:5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("INFO"), std::string::npos);
  EXPECT_EQ(r.out.find("hypothesis"), std::string::npos);
}

TEST(Cli, VerifyHypothesisViolatedIsInformational) {
  const auto r = run({"verify", "--n", "2", "--field", "fp:2", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  bool any_info = false;
  for (const auto& c : j["results"][0]["checks"]) any_info = any_info || c["informational"].get<bool>();
  EXPECT_TRUE(any_info);
  EXPECT_EQ(r.code, j["pass"].get<bool>() ? 0 : 1);
}

TEST(Cli, VerifyJsonIsStable) {
  const auto a = run({"verify", "--n", "2", "--format", "json", "--seed", "5"});
  const auto b = run({"verify", "--n", "2", "--format", "json", "--seed", "5"});
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["field"], "q");
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["n"], 2);
  EXPECT_EQ(j["results"][0]["dimension"], 18);
  for (const auto& c : j["results"][0]["checks"]) {
    EXPECT_TRUE(c.contains("name") && c.contains("pass") && c.contains("detail"));
  }
}

TEST(Cli, VerifyStepsReportsTheGapAtTwo) {
  const auto r = run({"verify", "--n", "2", "--steps"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("STEP 9: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("STEP 6: FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("verify: FAILED"), std::string::npos);
  EXPECT_EQ(run({"verify", "--n", "3", "--steps"}).code, 0);
}

TEST(Cli, VerboseStreamsToStderr) {
  const auto r = run({"verify", "--n", "2", "--verbose"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("[n=2] PASS groebner"), std::string::npos);
}

TEST(Cli, BudgetExceededFails) {
  const auto r = run({"verify", "--n", "6", "--budget", "0.000001"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("budget"), std::string::npos);
}

TEST(Cli, HypersurfaceEquations) {
  const auto r1 = run({"hypersurface", "--n", "2", "--functional", "z_06"});
  ASSERT_EQ(r1.code, 0) << r1.err;
  const auto l1 = lines(r1.out);
  EXPECT_EQ(l1[0], "d=7");
  EXPECT_EQ(l1[2], "orbit check: 10 of 10 random exp(u), u in ker pi, lie on X");

  const auto r2 = run({"hypersurface", "--n", "2", "--functional", "z_05+z_06", "--format", "json"});
  ASSERT_EQ(r2.code, 0) << r2.err;
  const auto j = nlohmann::json::parse(r2.out);
  EXPECT_EQ(j["degree"], 7);
  EXPECT_EQ(j["functional"], "z_05 + z_06");
  EXPECT_EQ(j["polynomial"]["terms"].size(), 116u);
  EXPECT_EQ(j["orbit_check"]["on_hypersurface"], 10);

  const auto bad = run({"hypersurface", "--n", "2", "--functional", "z_10"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("not complementary"), std::string::npos);
  EXPECT_EQ(run({"hypersurface", "--n", "2", "--functional", "z_06^2"}).code, 2);
  EXPECT_EQ(run({"hypersurface", "--n", "2", "--functional", "z_06 +"}).code, 2);
  EXPECT_EQ(run({"hypersurface", "--n", "2", "--functional", "z_06", "--field", "fp:5"}).code, 2);
}

TEST(Cli, Derivations) {
  const auto r = run({"derivations", "--n", "2"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "dim Der = 23");
  EXPECT_EQ(ls.size(), 24u);
  EXPECT_NE(r.out.find("D_x = 0, D_y = y^6"), std::string::npos);
  const auto j = nlohmann::json::parse(run({"derivations", "--n", "3", "--format", "json"}).out);
  EXPECT_EQ(j["dimension"], 39);
  EXPECT_EQ(j["basis"].size(), 39u);
}

TEST(Cli, Groebner) {
  const auto r = run({"groebner", data("ideal_n2.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"y^7", "x*y^5", "x^2*y^2 - y^4", "x^5 - x*y^3"}));
  const auto j = nlohmann::json::parse(run({"groebner", data("ideal_n2.txt"), "--format", "json"}).out);
  EXPECT_EQ(j["basis"].size(), 4u);
  EXPECT_EQ(j["vars"], (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(run({"groebner", data("empty.txt")}).code, 2);
  EXPECT_EQ(run({"groebner", data("does_not_exist.txt")}).code, 2);
  EXPECT_EQ(run({"groebner"}).code, 2);
}

TEST(Cli, GroebnerParseError) {
  const std::string path = ::testing::TempDir() + "/bad_ideal.txt";
  std::ofstream(path) << "vars: x y\nx^2 + * y\n";
  const auto r = run({"groebner", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}
