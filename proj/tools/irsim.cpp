#include <irsim/commands.hpp>
#include <irsim/config.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw irsim::ConfigError({{"--config", "cannot read '" + path + "'"}});
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> expand_heights(const std::string& h) {
  if (h == "both") return {"ground", "aerial"};
  return {h};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-aided sectorized base station coverage simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out_dir = ".";
  bool dbm = false;
  std::optional<int> instances, draws, grid;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", config_path, "Scenario JSON file (empty or absent: defaults)");
    c->add_option("--seed", seed, "Master seed (overrides config)");
    c->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    c->add_option("--out", out_dir, "Output directory");
  };

  auto* link = app.add_subcommand("link-cdf", "Channel power gain CDF: analytic Rician vs multipath oracle");
  common(link);
  link->add_option("--samples", draws, "Fading draws per angle instance");
  link->add_option("--instances", instances, "Path-angle instances");

  std::string cells = "single", height = "ground", schemes;
  auto* cov = app.add_subcommand("coverage", "Ergodic throughput coverage maps and summary table");
  common(cov);
  cov->add_option("--cells", cells, "single|multi")->check(CLI::IsMember({"single", "multi"}));
  cov->add_option("--height", height, "ground|aerial|both")->check(CLI::IsMember({"ground", "aerial", "both"}));
  cov->add_option("--schemes", schemes, "Comma-separated: fixed,3d_bf,irs_cos,irs_cos3");
  cov->add_option("--instances", instances, "Channel instances per point");
  cov->add_option("--draws", draws, "Fading draws per instance");
  cov->add_option("--grid", grid, "Grid points per axis");
  cov->add_flag("--dbm", dbm, "Report powers in dBm");

  std::string bheight = "both";
  auto* bounds = app.add_subcommand("bounds", "Analytic mean-power bounds vs Monte-Carlo cell averages");
  common(bounds);
  bounds->add_option("--height", bheight, "ground|aerial|both")->check(CLI::IsMember({"ground", "aerial", "both"}));
  bounds->add_option("--instances", instances, "Channel instances per point");
  bounds->add_option("--draws", draws, "Fading draws per instance");
  bounds->add_option("--grid", grid, "Grid points per axis");
  bounds->add_flag("--dbm", dbm, "Report powers in dBm");

  auto* validate = app.add_subcommand("validate", "Parse and validate a config; print the resolved scenario");
  common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    irsim::Config cfg = irsim::parse_config(config_path.empty() ? std::string() : read_file(config_path));
    if (seed) cfg.seed = *seed;
    if (link->parsed()) {
      if (draws) cfg.link_level.draws_per_instance = *draws;
      if (instances) cfg.link_level.instances = *instances;
    } else {
      if (draws) cfg.budget.draws_per_instance = *draws;
      if (instances) cfg.budget.instances = *instances;
    }
    if (grid) cfg.grid.points_per_axis = *grid;
    irsim::validate_config(cfg);

    irsim::RunOptions opt;
    opt.out_dir = out_dir;
    opt.workers = workers;
    opt.dbm = dbm;

    std::vector<std::filesystem::path> files;
    if (link->parsed()) {
      files = irsim::cmd_link_cdf(cfg, opt);
    } else if (cov->parsed()) {
      irsim::CoverageRequest req;
      req.multi_cell = cells == "multi";
      req.heights = expand_heights(height);
      if (!schemes.empty()) {
        std::stringstream ss(schemes);
        std::string s;
        while (std::getline(ss, s, ',')) req.schemes.push_back(s);
        for (const auto& s : req.schemes) {
          const auto& k = irsim::known_schemes();
          if (std::find(k.begin(), k.end(), s) == k.end())
            throw irsim::ConfigError({{"--schemes", "unknown scheme \"" + s + "\" (expected fixed|3d_bf|irs_cos|irs_cos3)"}});
        }
      }
      files = irsim::cmd_coverage(cfg, opt, req);
    } else if (bounds->parsed()) {
      files = irsim::cmd_bounds(cfg, opt, expand_heights(bheight));
    } else if (validate->parsed()) {
      std::cout << irsim::serialize_config(cfg) << "\n";
      return kExitOk;
    }
    for (const auto& f : files) std::cout << f.string() << "\n";
    return kExitOk;
  } catch (const irsim::ConfigError& e) {
    for (const auto& i : e.issues()) std::cerr << "config error: " << i.path << ": " << i.message << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
