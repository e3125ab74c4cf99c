#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qconf/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = qconf::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const json* find_coeff(const json& rows, const std::string& basis, int qdeg, int logdeg) {
  for (const auto& row : rows) {
    if (row["basis"] == basis && row["qdeg"] == qdeg && row["logdeg"] == logdeg) return &row;
  }
  return nullptr;
}

}  // namespace

TEST(Cli, JfunCohomologicalProjectivePlane) {
  const auto r = run({"jfun", "--variant", "coh", "--n", "2", "--trunc", "2"});
  ASSERT_EQ(r.code, qconf::cli::kPass) << r.err;
  const auto d = r.doc();
  EXPECT_EQ(d["schema"], "qconf/1");
  EXPECT_EQ(d["command"], "jfun");
  const auto& c = d["coefficients"];
  const std::vector<std::tuple<std::string, int, std::string>> expected{
      {"H^0", 1, "1/1"}, {"H^1", 1, "-3/1"}, {"H^2", 1, "6/1"}, {"H^0", 2, "1/8"}, {"H^1", 2, "-9/16"}, {"H^2", 2, "3/2"}};
  for (const auto& [basis, qdeg, value] : expected) {
    const json* row = find_coeff(c, basis, qdeg, 0);
    ASSERT_NE(row, nullptr) << basis << " Q^" << qdeg;
    EXPECT_EQ((*row)["value"], value) << basis << " Q^" << qdeg;
  }
  EXPECT_EQ((*find_coeff(c, "H^2", 0, 2))["value"], "1/2");
}

TEST(Cli, JfunKTheoreticLogCoefficient) {
  const auto r = run({"jfun", "--variant", "kth", "--n", "1", "--trunc", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = r.doc();
  const json* row = find_coeff(d["coefficients"], "pi^1", 0, 1);
  ASSERT_NE(row, nullptr);
  EXPECT_EQ((*row)["value"], "-1");
}

TEST(Cli, JfunNumericQ) {
  const auto r = run({"jfun", "--variant", "kth", "--n", "1", "--trunc", "2", "--q0", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.doc()["coefficients"].empty());
}

TEST(Cli, InvalidQIsAConfigError) {
  EXPECT_EQ(run({"jfun", "--variant", "kth", "--n", "1", "--q0", "1.5"}).code, qconf::cli::kConfigError);
  EXPECT_EQ(run({"jfun", "--variant", "nope"}).code, qconf::cli::kConfigError);
  EXPECT_EQ(run({"jfun", "--n", "x"}).code, qconf::cli::kConfigError);
  EXPECT_EQ(run({"no-such-command"}).code, qconf::cli::kConfigError);
}

TEST(Cli, CsvHeader) {
  const auto r = run({"jfun", "--variant", "kth", "--n", "1", "--trunc", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "basis,qdeg,logdeg,t,value,target,error");
  // No table to print.
  EXPECT_EQ(run({"verify", "--variant", "kth", "--n", "1", "--format", "csv"}).code, qconf::cli::kConfigError);
}

TEST(Cli, VerifyPassesAndLocatesCorruption) {
  for (const char* v : {"kth", "kth-eq", "coh", "coh-eq"}) {
    const auto r = run({"verify", "--variant", v, "--n", "1", "--trunc", "3"});
    EXPECT_EQ(r.code, qconf::cli::kPass) << v << ": " << r.err;
    EXPECT_TRUE(r.doc()["pass"].get<bool>()) << v;
  }
  const auto bad = run({"verify", "--variant", "coh-eq", "--n", "1", "--trunc", "3", "--corrupt-degree", "2"});
  EXPECT_EQ(bad.code, qconf::cli::kFail);
  const auto d = bad.doc();
  EXPECT_FALSE(d["pass"].get<bool>());
  EXPECT_EQ(d["located"]["qdeg"], 2);
}

TEST(Cli, ConfluenceEquationLevelNonEquivariant) {
  const auto r = run({"confluence", "--level", "equation", "--variant", "noneq", "--n", "2"});
  ASSERT_EQ(r.code, qconf::cli::kPass) << r.err;
  const auto d = r.doc();
  EXPECT_EQ(d["verdict"], "pass");
  // Leading delta^3 coefficient tends to z^3 = 1.
  bool found = false;
  for (const auto& row : d["summary"]) {
    if (row["basis"] == "delta^3" && row["qdeg"] == 0) {
      found = true;
      EXPECT_TRUE(row["pass"].get<bool>());
    }
  }
  EXPECT_TRUE(found);
  for (const auto& row : d["rows"]) {
    if (row["basis"] == "delta^3" && row["qdeg"] == 0) EXPECT_EQ(row["target"], "1/1");
  }
}

TEST(Cli, ConfluenceSolutionLevel) {
  const auto r = run({"confluence", "--variant", "eq", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = r.doc();
  EXPECT_EQ(d["verdict"], "pass");
  EXPECT_TRUE(d["gamma_match"].get<bool>());
  EXPECT_LT(d["gamma_max_error"].get<double>(), 1e-3);
  EXPECT_EQ(run({"confluence", "--variant", "noneq", "--n", "2"}).code, 0);
}

TEST(Cli, ResonantLambdaIsADomainError) {
  EXPECT_EQ(run({"confluence", "--variant", "eq", "--n", "1", "--lambda", "0,1"}).code, qconf::cli::kDomainError);
}

TEST(Cli, SpecialFunctions) {
  const auto theta = run({"specfun", "theta", "--q", "0.5", "--at", "2", "--check-qde"});
  ASSERT_EQ(theta.code, 0) << theta.err;
  EXPECT_LT(theta.doc()["qde_residual"].get<double>(), 1e-60);

  const auto ell = run({"specfun", "ell", "--q", "0.5", "--at", "2", "--log-limit"});
  ASSERT_EQ(ell.code, 0) << ell.err;
  EXPECT_TRUE(ell.doc()["log_limit"]["strictly_decreasing"].get<bool>());

  EXPECT_EQ(run({"specfun", "ell", "--q", "0.5", "--at", "-0.5"}).code, qconf::cli::kDomainError);
  EXPECT_EQ(run({"specfun", "theta", "--q", "1.5", "--at", "2"}).code, qconf::cli::kDomainError);
  EXPECT_EQ(run({"specfun", "qpoch", "--q", "0.5", "--at", "0.25"}).code, 0);
  EXPECT_EQ(run({"specfun", "echar", "--q", "0.5", "--at", "2", "--lambda", "3"}).code, 0);
}

TEST(Cli, SauloyFamilies) {
  EXPECT_EQ(run({"sauloy-check", "--family", "eq"}).code, qconf::cli::kPass);
  EXPECT_EQ(run({"sauloy-check", "--family", "constant", "--exponents", "0,1/3"}).code, qconf::cli::kPass);
  EXPECT_EQ(run({"sauloy-check", "--family", "noneq"}).code, qconf::cli::kDomainError);
  EXPECT_EQ(run({"sauloy-check", "--family", "divergent"}).code, qconf::cli::kConvergenceError);
  EXPECT_EQ(run({"sauloy-check", "--family", "eq", "--poles", "3,0.75"}).code, qconf::cli::kDomainError);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"confluence", "--variant", "eq", "--n", "1"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> j{"jfun", "--variant", "coh-eq", "--n", "2", "--trunc", "3"};
  EXPECT_EQ(run(j).out, run(j).out);
}

TEST(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DocumentedInvocations) {
  const auto coh = run({"jfun", "--variant", "coh", "--n", "2", "--z", "1", "--trunc", "1"});
  ASSERT_EQ(coh.code, 0) << coh.err;
  const auto d = coh.doc();
  EXPECT_EQ((*find_coeff(d["coefficients"], "H^1", 1, 0))["value"], "-3/1");

  const auto kth = run({"verify", "--variant", "kth", "--n", "2", "--trunc", "6"});
  ASSERT_EQ(kth.code, 0) << kth.err;
  EXPECT_EQ(kth.doc()["residual_max"], "0");
  EXPECT_EQ(run({"verify", "--variant", "kth", "--n", "2", "--trunc", "0"}).code, qconf::cli::kDomainError);

  const auto theta = run({"specfun", "theta", "--q", "0.3", "--at", "0.7", "--check-qde"});
  ASSERT_EQ(theta.code, 0) << theta.err;
  EXPECT_LT(theta.doc()["qde_residual"].get<double>(), 1e-12);

  const auto ell = run({"specfun", "ell", "--q", "0.5", "--at", "2.0", "--log-limit", "--steps", "12"});
  ASSERT_EQ(ell.code, 0) << ell.err;
  const auto e = ell.doc();
  EXPECT_EQ(e["log_limit"]["rows"].size(), 12U);
  EXPECT_TRUE(e["log_limit"]["strictly_decreasing"].get<bool>());
}

TEST(Cli, OutputFileOption) {
  const std::string path = ::testing::TempDir() + "qconf_cli_out.json";
  const auto r = run({"jfun", "--variant", "coh", "--n", "1", "--trunc", "1", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  EXPECT_EQ(json::parse(in)["command"], "jfun");
}
