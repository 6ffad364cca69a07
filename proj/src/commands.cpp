#include <irsim/commands.hpp>
#include <irsim/stats.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace irsim {

using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

double power_db(double watts, bool dbm) { return to_db(watts) + (dbm ? 30.0 : 0.0); }
const char* power_unit(bool dbm) { return dbm ? "dBm" : "dBW"; }

ordered_json metadata(const Config& cfg, bool dbm) {
  ordered_json m;
  m["tool"] = "irsim";
  m["seed"] = cfg.seed;
  m["config_hash"] = config_hash(cfg);
  m["power_unit"] = power_unit(dbm);
  m["budget"] = {{"instances", cfg.budget.instances}, {"draws_per_instance", cfg.budget.draws_per_instance}};
  m["config"] = ordered_json::parse(serialize_config(cfg));
  return m;
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << body;
  if (!f) throw std::runtime_error("failed writing " + p.string());
  return p;
}

}  // namespace

double height_for(const Config& cfg, const std::string& regime) {
  if (regime == "ground") return cfg.grid.ground_height_m;
  if (regime == "aerial") return cfg.grid.aerial_height_m;
  throw std::invalid_argument("unknown height regime '" + regime + "' (expected ground|aerial)");
}

std::vector<std::filesystem::path> cmd_link_cdf(const Config& cfg, const RunOptions& opt) {
  const Scenario sc = Scenario::build(cfg);
  const LinkCdfResult r = run_link_cdf(sc, opt.workers);

  std::string csv;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    csv += (i ? "," : "") + r.series[i].label + "_power_gain_lin," + r.series[i].label + "_cdf";
    rows = std::max(rows, r.series[i].x.size());
  }
  csv += "\n";
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < r.series.size(); ++i) {
      if (i) csv += ",";
      if (k < r.series[i].x.size()) csv += fmt(r.series[i].x[k]) + "," + fmt(r.series[i].cdf[k]);
      else csv += ",";
    }
    csv += "\n";
  }

  ordered_json j;
  j["metadata"] = metadata(cfg, opt.dbm);
  j["metadata"]["budget"] = {{"instances", cfg.link_level.instances},
                             {"draws_per_instance", cfg.link_level.draws_per_instance}};
  ordered_json series = ordered_json::array();
  for (const auto& s : r.summary) {
    series.push_back({{"kind", s.n_p ? "oracle" : "analytic"},
                      {"theta_g_deg", rad2deg(s.theta_g)},
                      {"n_p", s.n_p},
                      {"k", s.stats.k},
                      {"k_prime", s.stats.k_prime},
                      {"rho", s.stats.rho},
                      {"e_nlos", s.stats.e_nlos},
                      {"ks_distance", s.n_p ? ordered_json(s.ks) : ordered_json(nullptr)},
                      {"mean_power_gain_lin", s.mean_power}});
  }
  j["series"] = series;
  return {write_file(opt.out_dir, "link_cdf.csv", csv), write_file(opt.out_dir, "link_cdf.json", j.dump(2) + "\n")};
}

std::vector<std::filesystem::path> cmd_coverage(const Config& cfg, const RunOptions& opt, const CoverageRequest& req) {
  const Scenario sc = Scenario::build(cfg);
  const auto& names = req.schemes.empty() ? cfg.schemes : req.schemes;
  for (const auto& n : names)
    if (std::find(known_schemes().begin(), known_schemes().end(), n) == known_schemes().end())
      throw std::invalid_argument("unknown scheme '" + n + "'");
  std::vector<std::filesystem::path> files;
  ordered_json rows = ordered_json::array();
  const std::string cells = req.multi_cell ? "multi" : "single";
  const char* unit = power_unit(opt.dbm);
  for (const auto& hname : req.heights) {
    const double h = height_for(cfg, hname);
    for (const auto& name : names) {
      const BsScheme scheme = make_scheme(sc, name);
      CoverageOptions co;
      co.multi_cell = req.multi_cell;
      co.workers = opt.workers;
      const CoverageGrid g = run_coverage(sc, scheme, h, co);
      std::string csv = std::string("x_m,y_m,z_m,rate_bps_per_hz,signal_") + unit;
      if (req.multi_cell) csv += std::string(",interference_") + unit;
      csv += "\n";
      for (const auto& p : g.points) {
        csv += fmt(p.position.x) + "," + fmt(p.position.y) + "," + fmt(p.position.z) + "," + fmt(p.rate) + "," +
               fmt(power_db(p.signal_w, opt.dbm));
        if (req.multi_cell) csv += "," + fmt(power_db(p.interference_w, opt.dbm));
        csv += "\n";
      }
      files.push_back(write_file(opt.out_dir, "grid_" + name + "_" + hname + "_" + cells + ".csv", csv));
      ordered_json row{{"scheme", name},
                       {"label", g.label},
                       {"height", hname},
                       {"height_m", h},
                       {"cells", cells},
                       {"points", g.points.size()},
                       {"r_bar_bps_per_hz", g.summary.r_bar},
                       {"jain", g.summary.jain},
                       {std::string("s_bar_bar_") + unit, g.summary.s_bar_bar_db + (opt.dbm ? 30.0 : 0.0)}};
      row[std::string("i_bar_bar_") + unit] =
          g.summary.i_bar_bar_db ? ordered_json(*g.summary.i_bar_bar_db + (opt.dbm ? 30.0 : 0.0)) : ordered_json(nullptr);
      rows.push_back(row);
    }
  }
  ordered_json j;
  j["metadata"] = metadata(cfg, opt.dbm);
  j["summary"] = rows;
  files.push_back(write_file(opt.out_dir, "summary.json", j.dump(2) + "\n"));
  return files;
}

std::vector<std::filesystem::path> cmd_bounds(const Config& cfg, const RunOptions& opt,
                                              const std::vector<std::string>& heights) {
  const Scenario sc = Scenario::build(cfg);
  std::vector<std::pair<std::string, double>> hs;
  for (const auto& h : heights) hs.emplace_back(h, height_for(cfg, h));
  const auto entries = compute_bounds(sc, "irs_cos", hs, opt.workers);
  const char* unit = power_unit(opt.dbm);
  std::string csv = std::string("regime,quantity,lb_") + unit + ",ub_" + unit + ",mc_" + unit + ",inside\n";
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries) {
    const double lb = power_db(e.lb_w, opt.dbm), ub = power_db(e.ub_w, opt.dbm), mc = power_db(e.mc_w, opt.dbm);
    csv += e.regime + "," + e.quantity + "," + fmt(lb) + "," + fmt(ub) + "," + fmt(mc) + "," +
           (e.inside() ? "true" : "false") + "\n";
    arr.push_back({{"regime", e.regime},
                   {"quantity", e.quantity},
                   {std::string("lb_") + unit, lb},
                   {std::string("ub_") + unit, ub},
                   {std::string("mc_") + unit, mc},
                   {"inside", e.inside()}});
  }
  ordered_json j;
  j["metadata"] = metadata(cfg, opt.dbm);
  j["scheme"] = "irs_cos";
  j["bounds"] = arr;
  return {write_file(opt.out_dir, "bounds.csv", csv), write_file(opt.out_dir, "bounds.json", j.dump(2) + "\n")};
}

}  // namespace irsim
