#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "io.hpp"
#include "rrwoc/simulate.hpp"
#include "rrwoc/solvers.hpp"

using namespace rrwoc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFixtures = RRWOC_FIXTURE_DIR;

std::string fixture(const char* name) { return (kFixtures / name).string(); }

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rrwoc_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<double> row_major(const json& beta) {
  std::vector<double> out;
  for (const auto& row : beta) {
    for (const auto& v : row) out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> row_major(const Coefficients& beta) {
  std::vector<double> out;
  for (Eigen::Index r = 0; r < beta.linear().rows(); ++r) {
    for (Eigen::Index c = 0; c < beta.linear().cols(); ++c) out.push_back(beta.linear()(r, c));
  }
  return out;
}

void expect_report_matches(const json& report, const ModelEstimate& est) {
  EXPECT_EQ(row_major(report["beta"]), row_major(est.beta));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& p : est.assignment.pairs()) pairs.emplace_back(p.target, p.source);
  EXPECT_EQ(report["assignment"].get<decltype(pairs)>(), pairs);
  EXPECT_EQ(report["inliers"].get<std::vector<std::size_t>>(), est.inliers);
  EXPECT_EQ(report["residuals"].get<std::vector<double>>(), est.residuals);
  EXPECT_EQ(report["inlier_count"].get<std::size_t>(), est.inlier_count);
  EXPECT_EQ(report["iterations"].get<std::size_t>(), est.stats.iterations);
}

}  // namespace

TEST(CliSolve, FourPointFixtureMatchesLibraryBitExactly) {
  const CliRun r = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                         "exhaustive1d", "--seed", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["schema"], "1");
  EXPECT_EQ(report["solver"], "exhaustive1d");

  SolverOptions options;
  const ModelEstimate est =
      run_solver(SolverKind::Exhaustive1D, PointSet::from_values(std::vector<double>{1, 2, 3, 4}),
                 PointSet::from_values(std::vector<double>{2, 4, 8, 100}), options)
          .estimate;
  expect_report_matches(report, est);
  EXPECT_EQ(report["beta"][0][0].get<double>(), 2.0);
  EXPECT_EQ(report["inliers"], json::array({0, 1, 2}));
}

TEST(CliSolve, RandomizedMatchesLibraryForSameSeed) {
  const CliRun r = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                         "randomized1d", "--seed", "77", "--k-hint", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  SolverOptions options;
  options.seed = 77;
  options.k_hint = 1;
  const ModelEstimate est =
      run_solver(SolverKind::Randomized1D, PointSet::from_values(std::vector<double>{1, 2, 3, 4}),
                 PointSet::from_values(std::vector<double>{2, 4, 8, 100}), options)
          .estimate;
  expect_report_matches(json::parse(r.out), est);
}

TEST(CliSolve, SinglePointGivesRatio) {
  const CliRun r = run_cli({"solve", fixture("one_x.csv"), fixture("one_y.csv"), "--solver",
                         "exhaustive1d", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["beta"][0][0].get<double>(), 2.0);
}

TEST(CliSolve, MissingFileIsInputError) {
  const CliRun r = run_cli({"solve", "/nonexistent/source.csv", fixture("four_y.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/nonexistent/source.csv"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliSolve, MalformedFileNamesTheLine) {
  const CliRun r = run_cli({"solve", fixture("ragged.csv"), fixture("four_y.csv"), "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ragged.csv:3:"), std::string::npos) << r.err;
}

TEST(CliSolve, SolverFailureExitsWithTwo) {
  const CliRun r = run_cli({"solve", fixture("zero_x.csv"), fixture("zero_y.csv"), "--solver",
                         "exhaustive1d", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NoValidHypothesis"), std::string::npos);
}

TEST(CliSolve, DimensionAndFlagErrors) {
  // 1-D solvers reject an offset.
  EXPECT_EQ(run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                     "exhaustive1d", "--offset", "--seed", "1"})
                .code,
            1);
  EXPECT_EQ(run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver", "nope"}).code, 1);
  EXPECT_EQ(run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--nu", "1", "--nu-column",
                     "margin"})
                .code,
            1);
  EXPECT_EQ(run_cli({"solve", fixture("cloud.json"), fixture("four_y.csv"), "--seed", "1"}).code, 1);
}

TEST(CliSolve, IgnoredFlagsWarnOnStderr) {
  const CliRun r = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                         "exhaustive1d", "--delta", "0.5", "--trim", "0.1", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning: --delta"), std::string::npos);
  EXPECT_NE(r.err.find("warning: --trim"), std::string::npos);
  EXPECT_TRUE(json::accept(r.out));
}

TEST(CliSolve, PerTargetMarginColumn) {
  const CliRun r = run_cli({"solve", fixture("margin_x.csv"), fixture("margin_y.csv"), "--solver",
                         "exhaustive1d", "--nu-column", "margin", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["inlier_count"], 4);
  EXPECT_EQ(report["beta"][0][0].get<double>(), 2.0);
  EXPECT_EQ(report["config"]["nu_column"], "margin");
  EXPECT_TRUE(report["config"]["nu"].is_null());
}

TEST(CliSolve, EntropySeedIsEchoedAndReproduces) {
  const CliRun first = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                             "randomized1d", "--k-hint", "1"});
  ASSERT_EQ(first.code, 0) << first.err;
  const json a = json::parse(first.out);
  EXPECT_EQ(a["seed_source"], "entropy");
  const auto seed = a["seed"].get<std::uint64_t>();
  EXPECT_NE(first.err.find("seed: " + std::to_string(seed)), std::string::npos);

  const CliRun again = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                             "randomized1d", "--k-hint", "1", "--seed", std::to_string(seed)});
  json b = json::parse(again.out);
  EXPECT_EQ(b["seed_source"], "flag");
  b["seed_source"] = "entropy";
  EXPECT_EQ(a, b);
}

TEST(CliSolve, CsvOutputAndOutFile) {
  const fs::path dir = scratch_dir("csv");
  const fs::path target = dir / "report.csv";
  const CliRun r = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--solver",
                         "exhaustive1d", "--seed", "1", "--output", "csv", "--out", target.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string text = slurp(target);
  EXPECT_EQ(text.rfind("field,i,j,value\n", 0), 0u);
  EXPECT_NE(text.find("\nbeta,0,0,2\n"), std::string::npos);
  EXPECT_NE(text.find("\npair,2,3,"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "report.csv.tmp"));
  fs::remove_all(dir);
}

TEST(CliSolve, TimingIsOptIn) {
  const std::vector<std::string> args{"solve", fixture("four_x.csv"), fixture("four_y.csv"),
                                      "--solver", "exhaustive1d", "--seed", "1"};
  EXPECT_FALSE(json::parse(run_cli(args).out).contains("wall_time_s"));
  std::vector<std::string> timed = args;
  timed.push_back("--timing");
  EXPECT_TRUE(json::parse(run_cli(timed).out).contains("wall_time_s"));
}

TEST(CliSolve, ThreadEnvironmentVariable) {
  ::setenv("RRWOC_THREADS", "zero", 1);
  EXPECT_EQ(run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--seed", "1",
                     "--solver", "randomized1d"})
                .code,
            1);
  ::setenv("RRWOC_THREADS", "2", 1);
  const CliRun capped = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--seed", "1",
                              "--solver", "randomized1d", "--threads", "8"});
  ::unsetenv("RRWOC_THREADS");
  const CliRun single = run_cli({"solve", fixture("four_x.csv"), fixture("four_y.csv"), "--seed", "1",
                              "--solver", "randomized1d", "--threads", "1"});
  EXPECT_EQ(capped.code, 0);
  EXPECT_EQ(capped.out, single.out);
}

TEST(CliInput, JsonCloudWithMargins) {
  const cli::Cloud cloud = cli::read_cloud(fixture("cloud.json"), std::string("margin"));
  EXPECT_EQ(cloud.points.dim(), 2u);
  EXPECT_EQ(cloud.points.count(), 3u);
  EXPECT_EQ(cloud.points.matrix()(1, 0), 2.5);
  ASSERT_TRUE(cloud.margins);
  EXPECT_EQ(*cloud.margins, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_FALSE(cli::read_cloud(fixture("cloud.json")).margins);
}

TEST(CliInput, HeaderAutoDetection) {
  EXPECT_EQ(cli::read_cloud(fixture("four_x.csv")).points.count(), 4u);
  EXPECT_EQ(cli::read_cloud(fixture("four_y.csv")).points.count(), 4u);
  EXPECT_THROW(cli::read_cloud(fixture("margin_y.csv"), std::string("sigma")), Error);
  EXPECT_THROW(cli::read_cloud(fixture("four_y.csv"), std::string("margin")), Error);
}

TEST(CliInput, NumbersRoundTripThroughText) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 4.9406564584124654e-324}) {
    EXPECT_EQ(std::strtod(cli::format_double(v).c_str(), nullptr), v);
  }
}

TEST(CliSimulate, WriteReadSolveEqualsInMemory) {
  const fs::path dir = scratch_dir("sim");
  const CliRun r = run_cli({"simulate", "--out", dir.string(), "--d", "2", "--n", "8", "--m", "9", "--k",
                         "2", "--seed", "41"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const json truth = json::parse(slurp(dir / "truth.json"));
  EXPECT_EQ(truth["schema"], "1");
  EXPECT_EQ(truth["outliers"].size(), 2u);

  SimConfig c;
  c.d = 2;
  c.n_target = 8;
  c.m_source = 9;
  c.k_outliers = 2;
  c.seed = 41;
  const SimInstance inst = generate_instance(c);
  EXPECT_EQ(row_major(truth["beta"]), row_major(inst.truth_beta));
  EXPECT_EQ(cli::read_cloud(dir / "X.csv").points.matrix(), inst.X.matrix());
  EXPECT_EQ(cli::read_cloud(dir / "Y.csv").points.matrix(), inst.Y.matrix());

  const CliRun solved = run_cli({"solve", (dir / "X.csv").string(), (dir / "Y.csv").string(), "--solver",
                              "exhaustivend", "--seed", "0"});
  ASSERT_EQ(solved.code, 0) << solved.err;
  SolverOptions options;
  expect_report_matches(json::parse(solved.out),
                        run_solver(SolverKind::ExhaustiveND, inst.X, inst.Y, options).estimate);
  fs::remove_all(dir);
}

TEST(CliSimulate, FixedSeedIsByteIdentical) {
  const fs::path a = scratch_dir("sim_a");
  const fs::path b = scratch_dir("sim_b");
  ASSERT_EQ(run_cli({"simulate", "--out", a.string(), "--k", "0", "--seed", "5"}).code, 0);
  ASSERT_EQ(run_cli({"simulate", "--out", b.string(), "--k", "0", "--seed", "5"}).code, 0);
  for (const char* name : {"X.csv", "Y.csv", "truth.json"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  EXPECT_EQ(json::parse(slurp(a / "truth.json"))["outliers"], json::array());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(CliSimulate, ConfigFileAndInvalidConfig) {
  const fs::path dir = scratch_dir("sim_cfg");
  {
    std::ofstream(dir / "cfg.json") << R"({"d": 2, "n": 6, "m": 6, "k": 1, "seed": 9})";
    std::ofstream(dir / "bad.json") << R"({"d": 2, "n": 6, "k": 6})";
    std::ofstream(dir / "typo.json") << R"({"sigmaa": 1})";
  }
  const CliRun ok = run_cli({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "o").string()});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(json::parse(slurp(dir / "o" / "truth.json"))["seed"], 9);
  EXPECT_EQ(cli::read_cloud(dir / "o" / "Y.csv").points.count(), 6u);
  EXPECT_EQ(run_cli({"simulate", "--config", (dir / "bad.json").string(), "--out", (dir / "p").string()}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "--config", (dir / "typo.json").string(), "--out", (dir / "q").string()}).code, 1);
  fs::remove_all(dir);
}

TEST(CliSweep, TinyGridIsReproducible) {
  const CliRun r = run_cli({"sweep", "--config", fixture("sweep_tiny.json"), "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "solver,d,n,m,k,sigma,snr,outlier_ratio,missing_ratio,trials,recoveries,recovery_rate,"
            "mean_beta_error");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_NE(r.err.find("sweep: 12/12"), std::string::npos);
  EXPECT_EQ(run_cli({"sweep", "--config", fixture("sweep_tiny.json"), "--threads", "3"}).out, r.out);
  EXPECT_NE(run_cli({"sweep", "--config", fixture("sweep_tiny.json"), "--seed", "1"}).out, r.out);
}

TEST(CliSweep, NeedsAGrid) {
  EXPECT_EQ(run_cli({"sweep"}).code, 1);
  EXPECT_EQ(run_cli({"sweep", "--preset", "nope"}).code, 1);
}

TEST(CliAssign, CostMatrixFixture) {
  const CliRun r = run_cli({"assign", fixture("costs.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["pairs"], json::parse("[[0, 1], [1, 0]]"));
  EXPECT_EQ(j["total_cost"].get<double>(), 3.0);
  EXPECT_EQ(run_cli({"assign", fixture("costs.csv"), "--output", "csv"}).out, "row,col,cost\n0,1,1\n1,0,2\n");
}

TEST(CliUsage, HelpAndUnknownCommands) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST(CliBinary, ExitCodesFromTheExecutable) {
  const fs::path dir = scratch_dir("bin");
  const std::string err_file = (dir / "err.txt").string();
  const std::string missing = std::string(RRWOC_CLI_PATH) + " solve " + (dir / "absent.csv").string() + " " +
                              fixture("four_y.csv") + " > /dev/null 2> " + err_file;
  const int status = std::system(missing.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 1);
  EXPECT_NE(slurp(err_file).find("absent.csv"), std::string::npos);

  const std::string failing = std::string(RRWOC_CLI_PATH) + " solve " + fixture("zero_x.csv") + " " +
                              fixture("zero_y.csv") + " --solver exhaustive1d --seed 1 > /dev/null 2> " + err_file;
  const int failed = std::system(failing.c_str());
  ASSERT_TRUE(WIFEXITED(failed));
  EXPECT_EQ(WEXITSTATUS(failed), 2);
  fs::remove_all(dir);
}
