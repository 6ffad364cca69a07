#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = IRSIM_CLI_PATH;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("irsim_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + kCli + "\" " + args + " >\"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, ValidatePrintsResolvedDefaults) {
  const fs::path d = scratch("validate");
  ASSERT_EQ(run("validate", d / "out.txt"), 0);
  const auto j = nlohmann::json::parse(slurp(d / "out.txt"));
  EXPECT_EQ(j["geometry"]["carrier_hz"].get<double>(), 2e9);
  EXPECT_EQ(j["layout"]["isd_m"].get<double>(), 500.0);
}

TEST(Cli, ValidationErrorsExitTwo) {
  const fs::path d = scratch("bad");
  std::ofstream(d / "bad.json") << R"({"radio": {"reflection_amplitude": 1.2}})";
  EXPECT_EQ(run("validate --config " + (d / "bad.json").string(), d / "log.txt"), 2);
  EXPECT_NE(slurp(d / "log.txt").find("radio.reflection_amplitude"), std::string::npos);
  std::ofstream(d / "unknown.json") << R"({"radoi": {}})";
  EXPECT_EQ(run("validate --config " + (d / "unknown.json").string(), d / "log.txt"), 2);
  EXPECT_EQ(run("validate --config " + (d / "missing.json").string(), d / "log.txt"), 2);
  EXPECT_EQ(run("link-cdf --samples 0 --out " + d.string(), d / "log.txt"), 2);
  EXPECT_EQ(run("coverage --schemes fixed,laser --out " + d.string(), d / "log.txt"), 2);
  EXPECT_EQ(run("coverage --cells triple", d / "log.txt"), 2);
  EXPECT_EQ(run("", d / "log.txt"), 2);
}

TEST(Cli, RuntimeErrorExitsOne) {
  const fs::path d = scratch("runtime");
  std::ofstream(d / "blocker") << "x";
  // Output directory path is an existing regular file.
  EXPECT_EQ(run("link-cdf --samples 5 --instances 1 --out " + (d / "blocker").string(), d / "log.txt"), 1);
}

TEST(Cli, LinkCdfWritesSixMonotoneSeries) {
  const fs::path d = scratch("linkcdf");
  ASSERT_EQ(run("link-cdf --samples 50 --instances 2 --workers 2 --out " + d.string(), d / "log.txt"), 0);
  const auto rows = csv_rows(slurp(d / "link_cdf.csv"));
  ASSERT_GT(rows.size(), 2u);
  ASSERT_EQ(rows[0].size(), 12u);
  int oracle = 0, analytic = 0;
  for (std::size_t c = 0; c < rows[0].size(); c += 2) {
    oracle += rows[0][c].rfind("oracle_", 0) == 0;
    analytic += rows[0][c].rfind("analytic_", 0) == 0;
    EXPECT_NE(rows[0][c + 1].find("_cdf"), std::string::npos);
    double prev = -1.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r][c + 1].empty()) continue;
      const double v = std::stod(rows[r][c + 1]);
      EXPECT_GE(v, prev);
      EXPECT_LE(v, 1.0);
      prev = v;
    }
  }
  EXPECT_EQ(oracle, 4);
  EXPECT_EQ(analytic, 2);
  const auto j = nlohmann::json::parse(slurp(d / "link_cdf.json"));
  EXPECT_EQ(j["series"].size(), 6u);
  EXPECT_EQ(j["metadata"]["budget"]["draws_per_instance"].get<int>(), 50);
}

TEST(Cli, CoverageIsByteIdenticalForSameSeed) {
  const fs::path a = scratch("cov_a"), b = scratch("cov_b");
  const std::string args =
      "coverage --cells multi --height aerial --schemes irs_cos,3d_bf --grid 5 --instances 2 --draws 10 --seed 42 --out ";
  ASSERT_EQ(run(args + a.string() + " --workers 1", a / "log.txt"), 0);
  ASSERT_EQ(run(args + b.string() + " --workers 3", b / "log.txt"), 0);
  for (const char* f : {"grid_irs_cos_aerial_multi.csv", "grid_3d_bf_aerial_multi.csv", "summary.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  const auto rows = csv_rows(slurp(a / "grid_irs_cos_aerial_multi.csv"));
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x_m", "y_m", "z_m", "rate_bps_per_hz", "signal_dBW", "interference_dBW"}));
  const auto j = nlohmann::json::parse(slurp(a / "summary.json"));
  EXPECT_EQ(j["metadata"]["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(j["summary"].size(), 2u);
  EXPECT_EQ(j["metadata"]["config"]["seed"].get<std::uint64_t>(), 42u);
}

TEST(Cli, CoverageSingleCellDbmUnits) {
  const fs::path d = scratch("cov_dbm");
  ASSERT_EQ(run("coverage --schemes fixed --grid 4 --instances 1 --draws 5 --dbm --out " + d.string(), d / "log.txt"), 0);
  const auto rows = csv_rows(slurp(d / "grid_fixed_ground_single.csv"));
  EXPECT_EQ(rows[0].back(), "signal_dBm");
  const auto j = nlohmann::json::parse(slurp(d / "summary.json"));
  EXPECT_TRUE(j["summary"][0]["i_bar_bar_dBm"].is_null());
}

TEST(Cli, BoundsReport) {
  const fs::path d = scratch("bounds");
  ASSERT_EQ(run("bounds --height aerial --grid 5 --instances 2 --draws 10 --out " + d.string(), d / "log.txt"), 0);
  const auto rows = csv_rows(slurp(d / "bounds.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"regime", "quantity", "lb_dBW", "ub_dBW", "mc_dBW", "inside"}));
  EXPECT_EQ(rows[1][0], "aerial");
  EXPECT_LT(std::stod(rows[1][2]), std::stod(rows[1][3]));
}

TEST(Cli, EmbeddedConfigReproducesRun) {
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  ASSERT_EQ(run("coverage --schemes irs_cos --grid 4 --instances 2 --draws 5 --seed 7 --out " + a.string(), a / "log.txt"), 0);
  const auto j = nlohmann::json::parse(slurp(a / "summary.json"));
  std::ofstream(b / "cfg.json") << j["metadata"]["config"].dump();
  ASSERT_EQ(run("coverage --schemes irs_cos --config " + (b / "cfg.json").string() + " --out " + b.string(), b / "log.txt"), 0);
  EXPECT_EQ(slurp(a / "grid_irs_cos_ground_single.csv"), slurp(b / "grid_irs_cos_ground_single.csv"));
  EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
}
