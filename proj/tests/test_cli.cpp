#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "poslp/cli.hpp"
#include "poslp/io.hpp"
#include "poslp/lpcore.hpp"
#include "poslp/models.hpp"
#include "poslp/report.hpp"

using namespace poslp;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "poslp");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return CliRun{code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("poslp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const std::string p = (dir_ / name).string();
    write_file(p, text);
    return p;
  }

  fs::path dir_;
};

const char* kSiso = R"({"n":2,"m":1,"p":1,"q":1,"A":[[-2,1],[0.5,-3]],"B":[[1],[0]],
  "C":[[1,1]],"D":[[0]],"E":[[1],[0]],"F":[[0]]})";

const char* kUnstable = R"({"n":1,"m":1,"p":1,"q":1,"A":[[1]],"B":[[1]],"C":[[1]],"D":[[0]],
  "E":[[1]],"F":[[0]],"K_lower":[[-0.5]],"K_upper":[[0]]})";

}  // namespace

TEST(Cli, Help) {
  const CliRun r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("robust-gain"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"--bogus", "check", "x"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"reproduce", "table9"}).code, 2);
  EXPECT_EQ(cli({"gain", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(cli({"robust-gain", "x", "--scaling", "poly:z"}).code, 2);
}

TEST(Cli, ReproduceTable3) {
  const CliRun r = cli({"--format", "structured", "--grid", "11", "reproduce", "table3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  const double published[] = {2, 2.7162, 5.3063, 12.0003, 37.7783};
  ASSERT_EQ(j["rows"].size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(j["rows"][i]["linf"].template get<double>(), published[i], 1e-3 * published[i]);
  }
  EXPECT_EQ(j["grid_verdict"]["status"], "consistent");
}

TEST(Cli, ReproduceEx72) {
  const CliRun r = cli({"reproduce", "ex72"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-tau3 + tau4 + tau5"), std::string::npos);
  EXPECT_NE(r.out.find("tau1 - tau2 + 2tau4 - 2tau5"), std::string::npos);
  EXPECT_NE(r.out.find("tau1 + tau2 + tau3 + tau4 + tau5"), std::string::npos);
}

TEST(Cli, ReproduceTables4And5) {
  for (const char* t : {"table4", "table5"}) {
    const CliRun r = cli({"--format", "structured", "--grid", "21", "reproduce", t});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& row : r.json()["rows"]) {
      EXPECT_LE(row["relative_difference"].get<double>(), 0.005);
    }
  }
}

TEST_F(CliFiles, SisoGainsCoincide) {
  const std::string f = file("siso.json", kSiso);
  const CliRun a = cli({"--format", "structured", "gain", f, "--norm", "l1"});
  const CliRun b = cli({"--format", "structured", "gain", f, "--norm", "linf"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(a.json()["gamma"].get<double>(), b.json()["gamma"].get<double>(), 1e-6);
}

TEST_F(CliFiles, ReportsCarryPolicyAndVerdict) {
  const std::string f = file("siso.json", kSiso);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"check", f}, {"gain", f}, {"synth", f}, {"reproduce", "ex72"}}) {
    std::vector<std::string> full = {"--format", "structured"};
    full.insert(full.end(), args.begin(), args.end());
    const CliRun r = cli(full);
    ASSERT_EQ(r.code, 0) << args[0] << r.err;
    const auto j = r.json();
    EXPECT_TRUE(j.contains("policy")) << args[0];
    EXPECT_TRUE(j["policy"].contains("epsilon"));
    EXPECT_TRUE(j.contains("grid_verdict")) << args[0];
    EXPECT_TRUE(j.contains("status")) << args[0];
  }
}

TEST_F(CliFiles, Check) {
  const std::string f = file("siso.json", kSiso);
  const auto j = cli({"--format", "structured", "check", f}).json();
  EXPECT_EQ(j["positive"], true);
  EXPECT_EQ(j["status"], "stable");
  EXPECT_NEAR(j["oracle_l1"].get<double>(), 7.0 / 11.0, 1e-12);
}

TEST_F(CliFiles, UnstableGainExitsOne) {
  const std::string f = file("unstable.json", kUnstable);
  const CliRun r = cli({"--format", "structured", "gain", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["status"], "infeasible");
}

TEST_F(CliFiles, SynthesisWithBoundsFromFile) {
  const std::string f = file("unstable.json", kUnstable);
  EXPECT_EQ(cli({"synth", f}).code, 1);
  const std::string b = file("bounds.json", R"({"K_lower":[[-3]],"K_upper":[[0]]})");
  const CliRun r = cli({"--format", "structured", "synth", f, "--bounds", b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["controller"]["K"][0][0].get<double>(), -3.0, 1e-9);
}

TEST_F(CliFiles, SynthesisZerosFile) {
  const std::string f = file("siso.json", kSiso);
  const std::string z = file("zeros.json", R"({"zero_pattern":[[0,0],[0,1]]})");
  const CliRun r = cli({"--format", "structured", "synth", f, "--zeros", z});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["controller"]["K"][0][0].get<double>(), 0.0);
}

TEST_F(CliFiles, DumpLpMatchesSolvedProgram) {
  const std::string f = file("siso.json", kSiso);
  const std::string dump = (dir_ / "gain.lp").string();
  ASSERT_EQ(cli({"--dump-lp", dump, "gain", f}).code, 0);
  const LinearProgram lp = parse_lp(read_file(dump));
  EXPECT_EQ(lp.num_vars, 3u);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kOptimal);
}

TEST_F(CliFiles, RobustGainOnPolynomialAndLftDocuments) {
  const std::string p = file("poly.json", format_poly_system(quadratic_uncertain_example()));
  const std::string l = file("lft.json", format_lft(lft_from_polynomial(quadratic_uncertain_example())));
  const CliRun a = cli({"--format", "structured", "--grid", "21", "robust-gain", p, "--scaling", "const"});
  const CliRun b = cli({"--format", "structured", "--grid", "21", "robust-gain", l, "--scaling", "const"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NEAR(a.json()["gamma"].get<double>(), 133.95, 0.005 * 133.95);
  EXPECT_DOUBLE_EQ(a.json()["gamma"].get<double>(), b.json()["gamma"].get<double>());
  EXPECT_TRUE(a.json().contains("conservatism"));
  EXPECT_TRUE(a.json()["certificate"].contains("products"));
  const CliRun c = cli({"--format", "structured", "--grid", "21", "robust-gain", p, "--scaling", "saturated",
                     "--degree", "2", "--norm", "linf"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NEAR(c.json()["gamma"].get<double>(), 82.025, 0.005 * 82.025);
}

TEST_F(CliFiles, RobustGainVertices) {
  const std::string p = file("gene.json", format_poly_system(gene_expression_model(0.5)));
  const CliRun r = cli({"--format", "structured", "--grid", "11", "robust-gain", p, "--vertices", "--norm", "linf"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["gamma"].get<double>(), 12.0003, 1e-3 * 12.0003);
  EXPECT_EQ(r.json()["vertices"], 8);
}

TEST_F(CliFiles, RobustSynth) {
  PolySystem s = PolySystem::zeros(2, 1, 1, 1, 1);
  s.A.add_term({0}, Mat{{-1, -0.5}, {1, -2}});
  s.A.add_term({1}, Mat{{0, 1}, {0, 0}});
  s.B.add_term({0}, Mat{{1}, {0}});
  s.E.add_term({0}, Mat{{1}, {1}});
  s.C.add_term({0}, Mat{{1, 1}});
  const std::string p = file("toy.json", format_poly_system(s));
  const CliRun r = cli({"--format", "structured", "robust-synth", p, "--scaling", "const"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["grid_verdict"]["status"], "consistent");
  EXPECT_EQ(r.json()["grid_verdict"]["points"], 101);
  const std::string z = file("zeros.json", R"({"zero_pattern":[[0,0],[0,1]]})");
  EXPECT_EQ(cli({"robust-synth", p, "--zeros", z}).code, 1);
}

TEST_F(CliFiles, StructuredReportsAreDeterministic) {
  const std::string p = file("poly.json", format_poly_system(quadratic_uncertain_example()));
  const std::vector<std::string> args = {"--format", "structured", "--grid", "11", "robust-gain", p,
                                         "--scaling", "saturated:2"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  const std::vector<std::string> delay = {"--format", "structured", "--seed", "5", "reproduce", "delay"};
  EXPECT_EQ(cli(delay).out, cli(delay).out);
}

TEST(Cli, DelayReproductionAgrees) {
  const CliRun r = cli({"--format", "structured", "reproduce", "delay"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["agreement"], "20/20");
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = POSLP_CLI_PATH;
  EXPECT_EQ(std::system((bin + " reproduce ex72 > /dev/null").c_str()), 0);
  const int bad = std::system((bin + " --nope > /dev/null 2>&1").c_str());
  EXPECT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), 2);
}

TEST(Report, TextRendering) {
  Report r("demo");
  r["gamma"] = 1.0 / 3.0;
  r["list"] = Report::Json::array({1, 2});
  r["nested"] = Report::Json{{"a", 1}};
  EXPECT_EQ(r.render(ReportFormat::kText), "command: demo\ngamma: 0.3333333333\nlist: [1, 2]\nnested:\n  a: 1\n");
  EXPECT_EQ(nlohmann::json::parse(r.render(ReportFormat::kStructured))["command"], "demo");
}
