#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dioph/error.hpp"
#include "dioph/report.hpp"

using namespace dioph;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "dioph-lab");
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dioph_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Report, RenderCsvLayout) {
  CsvTable t;
  t.header = {"x", "y"};
  t.rows = {{"1", "2"}, {"3", "4"}};
  EXPECT_EQ(render_csv(t, 0xabcULL), "x,y\n1,2\n3,4\n# config_hash=0000000000000abc version=0.1.0\n");
  t.rows.push_back({"5"});
  EXPECT_THROW(render_csv(t, 0), ContractError);
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Report, TupleHeader) {
  CountResult r;
  EXPECT_EQ(tuples_csv(r, 1).header,
            (std::vector<std::string>{"p", "r", "q_1", "slack0", "slack_1"}));
  EXPECT_EQ(tuples_csv(r, 2).header.size(), 7u);
}

TEST(Cli, ConfigTextParsing) {
  const auto m = cli::parse_config_text(
      "# comment\n[instance]\nc = sqrt2, sqrt3 ; trailing\nk=2\n\n[run]\nN = 100\nk = 3\n");
  EXPECT_EQ(m.at("c"), "sqrt2, sqrt3");
  EXPECT_EQ(m.at("k"), "3");
  EXPECT_EQ(m.at("N"), "100");
  EXPECT_THROW(cli::parse_config_text("no equals sign\n"), ConfigError);
  EXPECT_THROW(cli::parse_config_text("[broken\n"), ConfigError);
}

TEST(Cli, UnknownSubcommandIsConfigError) {
  const Outcome r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"search", "--bogus", "1"}).code, 2);
}

TEST(Cli, EpsilonConstraintMessage) {
  const Outcome r = run({"search", "--eps", "0.25", "--N", "100"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("0 < ε < γ_{d,k}"), std::string::npos);
  EXPECT_EQ(run({"search", "--d", "2", "--c", "phi"}).code, 2);
  EXPECT_EQ(run({"search", "--N", "ten"}).code, 2);
}

TEST(Cli, SearchWritesTupleCsv) {
  const fs::path out = scratch("tuples.csv");
  const Outcome r = run({"search", "--d", "1", "--c", "phi", "--k", "1", "--eps", "0.1", "--alpha",
                     "sqrt3", "--N", "100000", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(out);
  EXPECT_EQ(text.rfind("p,r,q_1,slack0,slack_1\n", 0), 0u);
  EXPECT_NE(text.find("\n# config_hash="), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  // Slacks are written with 30 significant digits.
  const auto line_end = text.find('\n', text.find('\n') + 1);
  const std::string row = text.substr(text.find('\n') + 1, line_end - text.find('\n') - 1);
  const std::string slack = row.substr(row.rfind(',') + 1);
  EXPECT_EQ(slack.size(), 32u);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "[instance]\nc = phi\nk = 1\neps = 0.1\n[run]\nN = 1000\nalpha = sqrt3\n";
  const fs::path out = scratch("override.csv");
  const Outcome a = run({"search", "--config", cfg.string(), "--out", out.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("for N = 1000\n"), std::string::npos);
  const Outcome b = run({"search", "--config", cfg.string(), "--N", "5000", "--out", out.string()});
  EXPECT_NE(b.out.find("for N = 5000\n"), std::string::npos);
  std::ofstream(cfg) << "[run]\nfoo = 1\n";
  EXPECT_EQ(run({"search", "--config", cfg.string()}).code, 2);
  EXPECT_EQ(run({"search", "--config", scratch("missing.cfg").string()}).code, 2);
}

TEST(Cli, IntegrateIsByteDeterministic) {
  const fs::path a = scratch("ti_a.csv"), b = scratch("ti_b.csv");
  ASSERT_EQ(run({"integrate", "--grid-hi", "14", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"integrate", "--grid-hi", "14", "--out", b.string()}).code, 0);
  const std::string ta = slurp(a);
  EXPECT_EQ(ta, slurp(b));
  EXPECT_EQ(ta.rfind("N,a,b,integral_exact,G_N_sec2,G_N_sec3_variant,ratio\n", 0), 0u);
  // The hash covers the configuration but not the output path.
  EXPECT_NE(ta.find("# config_hash="), std::string::npos);
  ASSERT_EQ(run({"integrate", "--grid-hi", "13", "--out", b.string()}).code, 0);
  EXPECT_NE(ta.substr(ta.find("# config_hash")), slurp(b).substr(slurp(b).find("# config_hash")));
}

TEST(Cli, CertifyPrintsEstimate) {
  const Outcome r = run({"dioph-certify", "--c", "sqrt2,sqrt3", "--k", "2", "--Nbound", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C_est = "), std::string::npos);
  EXPECT_NE(r.out.find("v_min = ("), std::string::npos);
  EXPECT_EQ(run({"dioph-certify", "--c", "1/2", "--k", "1", "--Nbound", "4"}).code, 1);
  EXPECT_EQ(run({"dioph-certify", "--Nbound", "50", "--method", "exhaustive", "--max-terms",
                 "100"}).code,
            3);
}

TEST(Cli, ChecksAndSweeps) {
  EXPECT_EQ(run({"vaaler-check", "--points", "2000"}).code, 0);
  EXPECT_EQ(run({"vaughan-check", "--n-max", "2000", "--b-max", "5000"}).code, 0);
  const fs::path audit = scratch("audit.csv"), sieve = scratch("sieve.csv"), up = scratch("up.csv");
  ASSERT_EQ(run({"audit", "--P", "1024", "--out", audit.string()}).code, 0);
  EXPECT_EQ(slurp(audit).rfind("label,P,exact,bound,ratio,J,u\n", 0), 0u);
  ASSERT_EQ(run({"sieve-side", "--grid-hi", "11", "--samples", "4", "--out", sieve.string()}).code, 0);
  EXPECT_EQ(slurp(sieve).rfind("N,t1,t2,S_exact,main_term,E_bound\n", 0), 0u);
  ASSERT_EQ(run({"upper", "--grid-hi", "11", "--samples", "10", "--out", up.string()}).code, 0);
  EXPECT_EQ(run({"upper", "--grid-hi", "11", "--samples", "10", "--max-terms", "5"}).code, 3);
}
