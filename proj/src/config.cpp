#include <irsim/config.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace irsim {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].path << ": " << issues[i].message;
  }
  return os.str();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class T>
bool json_matches(const json& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v.is_number();
  } else if constexpr (std::is_same_v<T, bool>) {
    return v.is_boolean();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  } else if constexpr (std::is_integral_v<T>) {
    return v.is_number_integer();
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v.is_string();
  } else {
    // std::vector<U> or std::array<U, K>
    if (!v.is_array()) return false;
    using U = typename T::value_type;
    if constexpr (!std::is_same_v<T, std::vector<U>>) {
      if (v.size() != std::tuple_size_v<T>) return false;
    }
    for (const auto& e : v)
      if (!json_matches<U>(e)) return false;
    return true;
  }
}

class Reader {
 public:
  Reader(const json* node, std::string path, std::vector<ConfigIssue>& issues)
      : node_(node), path_(std::move(path)), issues_(issues) {
    if (node_ && !node_->is_object()) {
      issues_.push_back({path_.empty() ? "<root>" : path_, "expected an object, got " + node_->dump()});
      node_ = nullptr;
    }
  }

  template <class T>
  void field(const char* key, T& out, const char* expect) {
    seen_.insert(key);
    if (!node_) return;
    auto it = node_->find(key);
    if (it == node_->end()) return;
    if (it->is_null()) return;
    if (!json_matches<T>(*it)) {
      issues_.push_back({sub(key), std::string("expected ") + expect + ", got " + it->dump()});
      return;
    }
    out = it->template get<T>();
  }

  Reader object(const char* key) {
    seen_.insert(key);
    const json* child = nullptr;
    if (node_) {
      auto it = node_->find(key);
      if (it != node_->end() && !it->is_null()) child = &*it;
    }
    return Reader(child, sub(key), issues_);
  }

  void done() {
    if (!node_) return;
    for (auto it = node_->begin(); it != node_->end(); ++it)
      if (!seen_.count(it.key())) issues_.push_back({sub(it.key().c_str()), "unknown key"});
  }

 private:
  std::string sub(const char* key) const { return path_.empty() ? std::string(key) : path_ + "." + key; }

  const json* node_;
  std::string path_;
  std::vector<ConfigIssue>& issues_;
  std::set<std::string> seen_;
};

struct SchemaReader {
  std::vector<ConfigIssue>& issues;

  void run(const json& root, Config& c) {
    Reader r(&root, "", issues);
    r.field("seed", c.seed, "unsigned integer");
    {
      Reader g = r.object("geometry");
      g.field("carrier_hz", c.geometry.carrier_hz, "number (Hz)");
      g.field("irs_height_m", c.geometry.irs_height_m, "number (m)");
      g.field("tx_distance_m", c.geometry.tx_distance_m, "number (m)");
      g.field("tx_hpbw_deg", c.geometry.tx_hpbw_deg, "[y, z] in degrees");
      Reader p = g.object("panel");
      p.field("m_y", c.geometry.panel.m_y, "even integer");
      p.field("m_z", c.geometry.panel.m_z, "even integer");
      p.field("spacing_y_m", c.geometry.panel.spacing_y_m, "number (m)");
      p.field("spacing_z_m", c.geometry.panel.spacing_z_m, "number (m)");
      p.done();
      g.done();
    }
    {
      Reader ch = r.object("channel");
      Reader k = ch.object("rician_k");
      k.field("ground_intercept_db", c.channel.rician_k.ground_intercept_db, "number (dB)");
      k.field("ground_slope_db_per_m", c.channel.rician_k.ground_slope_db_per_m, "number (dB/m)");
      k.field("k_min_db", c.channel.rician_k.k_min_db, "number (dB)");
      k.field("k_max_db", c.channel.rician_k.k_max_db, "number (dB)");
      k.done();
      Reader s = ch.object("spectrum");
      auto& sp = c.channel.spectrum;
      s.field("theta_g_deg", sp.theta_g_deg, "number (deg)");
      s.field("theta_m_deg", sp.theta_m_deg, "number (deg)");
      s.field("phi_g_deg", sp.phi_g_deg, "number (deg)");
      s.field("kappa", sp.kappa, "number");
      s.field("support_theta_deg", sp.support_theta_deg, "[lo, hi] in degrees");
      s.field("support_phi_deg", sp.support_phi_deg, "[lo, hi] in degrees");
      s.field("support_frame", sp.support_frame, "one of none|reflected|substituted");
      s.done();
      Reader pl = ch.object("pathloss");
      auto& t = c.channel.pathloss;
      pl.field("los_intercept_db", t.los_intercept_db, "number (dB)");
      pl.field("los_distance_slope", t.los_distance_slope, "number (dB/decade)");
      pl.field("los_far_distance_slope", t.los_far_distance_slope, "number (dB/decade)");
      pl.field("los_breakpoint_coeff", t.los_breakpoint_coeff, "number");
      pl.field("freq_slope", t.freq_slope, "number (dB/decade)");
      pl.field("effective_env_height_m", t.effective_env_height_m, "number (m)");
      pl.field("nlos_intercept_db", t.nlos_intercept_db, "number (dB)");
      pl.field("nlos_distance_slope", t.nlos_distance_slope, "number (dB/decade)");
      pl.field("nlos_height_coeff", t.nlos_height_coeff, "number (dB/m)");
      pl.field("nlos_height_ref_m", t.nlos_height_ref_m, "number (m)");
      pl.field("plos_d1_m", t.plos_d1_m, "number (m)");
      pl.field("plos_d2_m", t.plos_d2_m, "number (m)");
      pl.field("aerial_min_height_m", t.aerial_min_height_m, "number (m)");
      pl.field("aerial_full_los_height_m", t.aerial_full_los_height_m, "number (m)");
      pl.field("aerial_nlos_intercept_db", t.aerial_nlos_intercept_db, "number (dB)");
      pl.field("aerial_nlos_distance_slope", t.aerial_nlos_distance_slope, "number");
      pl.field("aerial_nlos_height_slope", t.aerial_nlos_height_slope, "number");
      pl.field("aerial_d1_log_coeff", t.aerial_d1_log_coeff, "number");
      pl.field("aerial_d1_offset", t.aerial_d1_offset, "number");
      pl.field("aerial_p1_log_coeff", t.aerial_p1_log_coeff, "number");
      pl.field("aerial_p1_offset", t.aerial_p1_offset, "number");
      pl.field("min_height_m", t.min_height_m, "number (m)");
      pl.field("max_height_m", t.max_height_m, "number (m)");
      pl.done();
      ch.done();
    }
    {
      Reader ra = r.object("radio");
      ra.field("tx_power_dbm", c.radio.tx_power_dbm, "number (dBm)");
      ra.field("reflection_amplitude", c.radio.reflection_amplitude, "number in [0, 1]");
      ra.field("noise_psd_dbm_per_hz", c.radio.noise_psd_dbm_per_hz, "number (dBm/Hz)");
      ra.field("bandwidth_hz", c.radio.bandwidth_hz, "number (Hz)");
      ra.field("noise_figure_db", c.radio.noise_figure_db, "number (dB)");
      ra.field("pattern_domain", c.radio.pattern_domain, "one of amplitude|power");
      ra.done();
    }
    {
      Reader i = r.object("irs");
      i.field("cos_gain", c.irs.cos_gain, "number (linear)");
      i.field("cos3_gain", c.irs.cos3_gain, "number (linear)");
      i.done();
    }
    {
      Reader b = r.object("benchmark");
      b.field("element_gain_dbi", c.benchmark.element_gain_dbi, "number (dBi)");
      b.field("element_hpbw_deg", c.benchmark.element_hpbw_deg, "number (deg)");
      b.field("element_max_attenuation_db", c.benchmark.element_max_attenuation_db, "number (dB)");
      b.field("element_side_lobe_db", c.benchmark.element_side_lobe_db, "number (dB)");
      b.field("fixed_downtilt_deg", c.benchmark.fixed_downtilt_deg, "number (deg)");
      b.done();
    }
    {
      Reader l = r.object("layout");
      l.field("isd_m", c.layout.isd_m, "number (m)");
      l.field("rings", c.layout.rings, "integer");
      l.done();
    }
    {
      Reader g = r.object("grid");
      g.field("points_per_axis", c.grid.points_per_axis, "integer");
      g.field("hex_radius_m", c.grid.hex_radius_m, "number (m)");
      g.field("min_distance_m", c.grid.min_distance_m, "number (m)");
      g.field("ground_height_m", c.grid.ground_height_m, "number (m)");
      g.field("aerial_height_m", c.grid.aerial_height_m, "number (m)");
      g.done();
    }
    {
      Reader b = r.object("budget");
      b.field("instances", c.budget.instances, "integer");
      b.field("draws_per_instance", c.budget.draws_per_instance, "integer");
      b.done();
    }
    {
      Reader l = r.object("link_level");
      l.field("instances", c.link_level.instances, "integer");
      l.field("draws_per_instance", c.link_level.draws_per_instance, "integer");
      l.field("paths", c.link_level.paths, "array of integers");
      l.field("theta_g_deg", c.link_level.theta_g_deg, "array of numbers (deg)");
      l.field("ue_position_m", c.link_level.ue_position_m, "[x, y, z] in meters");
      l.field("erp_gain", c.link_level.erp_gain, "number (linear)");
      l.done();
    }
    r.field("schemes", c.schemes, "array of scheme names");
    r.done();
  }
};

json to_json(const Config& c) {
  const auto& t = c.channel.pathloss;
  const auto& sp = c.channel.spectrum;
  json j;
  j["seed"] = c.seed;
  j["geometry"] = {{"carrier_hz", c.geometry.carrier_hz},
                   {"irs_height_m", c.geometry.irs_height_m},
                   {"tx_distance_m", c.geometry.tx_distance_m},
                   {"tx_hpbw_deg", c.geometry.tx_hpbw_deg},
                   {"panel",
                    {{"m_y", c.geometry.panel.m_y},
                     {"m_z", c.geometry.panel.m_z},
                     {"spacing_y_m", c.geometry.panel.spacing_y_m},
                     {"spacing_z_m", c.geometry.panel.spacing_z_m}}}};
  j["channel"]["rician_k"] = {{"ground_intercept_db", c.channel.rician_k.ground_intercept_db},
                              {"ground_slope_db_per_m", c.channel.rician_k.ground_slope_db_per_m},
                              {"k_min_db", c.channel.rician_k.k_min_db},
                              {"k_max_db", c.channel.rician_k.k_max_db}};
  j["channel"]["spectrum"] = {{"theta_g_deg", sp.theta_g_deg},         {"theta_m_deg", sp.theta_m_deg},
                              {"phi_g_deg", sp.phi_g_deg},             {"kappa", sp.kappa},
                              {"support_theta_deg", sp.support_theta_deg}, {"support_phi_deg", sp.support_phi_deg},
                              {"support_frame", sp.support_frame}};
  j["channel"]["pathloss"] = {{"los_intercept_db", t.los_intercept_db},
                              {"los_distance_slope", t.los_distance_slope},
                              {"los_far_distance_slope", t.los_far_distance_slope},
                              {"los_breakpoint_coeff", t.los_breakpoint_coeff},
                              {"freq_slope", t.freq_slope},
                              {"effective_env_height_m", t.effective_env_height_m},
                              {"nlos_intercept_db", t.nlos_intercept_db},
                              {"nlos_distance_slope", t.nlos_distance_slope},
                              {"nlos_height_coeff", t.nlos_height_coeff},
                              {"nlos_height_ref_m", t.nlos_height_ref_m},
                              {"plos_d1_m", t.plos_d1_m},
                              {"plos_d2_m", t.plos_d2_m},
                              {"aerial_min_height_m", t.aerial_min_height_m},
                              {"aerial_full_los_height_m", t.aerial_full_los_height_m},
                              {"aerial_nlos_intercept_db", t.aerial_nlos_intercept_db},
                              {"aerial_nlos_distance_slope", t.aerial_nlos_distance_slope},
                              {"aerial_nlos_height_slope", t.aerial_nlos_height_slope},
                              {"aerial_d1_log_coeff", t.aerial_d1_log_coeff},
                              {"aerial_d1_offset", t.aerial_d1_offset},
                              {"aerial_p1_log_coeff", t.aerial_p1_log_coeff},
                              {"aerial_p1_offset", t.aerial_p1_offset},
                              {"min_height_m", t.min_height_m},
                              {"max_height_m", t.max_height_m}};
  j["radio"] = {{"tx_power_dbm", c.radio.tx_power_dbm},
                {"reflection_amplitude", c.radio.reflection_amplitude},
                {"noise_psd_dbm_per_hz", c.radio.noise_psd_dbm_per_hz},
                {"bandwidth_hz", c.radio.bandwidth_hz},
                {"noise_figure_db", c.radio.noise_figure_db},
                {"pattern_domain", c.radio.pattern_domain}};
  j["irs"] = {{"cos_gain", c.irs.cos_gain}, {"cos3_gain", c.irs.cos3_gain}};
  j["benchmark"] = {{"element_gain_dbi", c.benchmark.element_gain_dbi},
                    {"element_hpbw_deg", c.benchmark.element_hpbw_deg},
                    {"element_max_attenuation_db", c.benchmark.element_max_attenuation_db},
                    {"element_side_lobe_db", c.benchmark.element_side_lobe_db},
                    {"fixed_downtilt_deg", c.benchmark.fixed_downtilt_deg}};
  j["layout"] = {{"isd_m", c.layout.isd_m}, {"rings", c.layout.rings}};
  j["grid"] = {{"points_per_axis", c.grid.points_per_axis},
               {"hex_radius_m", c.grid.hex_radius_m},
               {"min_distance_m", c.grid.min_distance_m},
               {"ground_height_m", c.grid.ground_height_m},
               {"aerial_height_m", c.grid.aerial_height_m}};
  j["budget"] = {{"instances", c.budget.instances}, {"draws_per_instance", c.budget.draws_per_instance}};
  j["link_level"] = {{"instances", c.link_level.instances},
                     {"draws_per_instance", c.link_level.draws_per_instance},
                     {"paths", c.link_level.paths},
                     {"theta_g_deg", c.link_level.theta_g_deg},
                     {"ue_position_m", c.link_level.ue_position_m},
                     {"erp_gain", c.link_level.erp_gain}};
  j["schemes"] = c.schemes;
  return j;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error("invalid configuration: " + join_issues(issues)), issues_(std::move(issues)) {}

const std::vector<std::string>& known_schemes() {
  static const std::vector<std::string> names{"fixed", "3d_bf", "irs_cos", "irs_cos3"};
  return names;
}

SupportFrame parse_support_frame(const std::string& s) {
  if (s == "none") return SupportFrame::none;
  if (s == "reflected") return SupportFrame::reflected;
  if (s == "substituted") return SupportFrame::substituted;
  throw std::invalid_argument("unknown support frame '" + s + "'");
}

PatternDomain parse_pattern_domain(const std::string& s) {
  if (s == "amplitude") return PatternDomain::amplitude;
  if (s == "power") return PatternDomain::power;
  throw std::invalid_argument("unknown pattern domain '" + s + "'");
}

void validate_config(const Config& c) {
  std::vector<ConfigIssue> is;
  auto need = [&](bool ok, const std::string& path, const std::string& msg) {
    if (!ok) is.push_back({path, msg});
  };
  auto finite = [](double v) { return std::isfinite(v); };

  const auto& g = c.geometry;
  need(finite(g.carrier_hz) && g.carrier_hz > 0, "geometry.carrier_hz", "expected positive frequency in Hz, got " + num(g.carrier_hz));
  const double lam = g.carrier_hz > 0 ? wavelength(g.carrier_hz) : 1.0;
  need(finite(g.irs_height_m) && g.irs_height_m > 0, "geometry.irs_height_m", "expected positive height in m, got " + num(g.irs_height_m));
  need(finite(g.tx_distance_m) && g.tx_distance_m > 0, "geometry.tx_distance_m", "expected positive distance in m, got " + num(g.tx_distance_m));
  for (int k = 0; k < 2; ++k)
    need(g.tx_hpbw_deg[k] > 0 && g.tx_hpbw_deg[k] < 180, "geometry.tx_hpbw_deg[" + std::to_string(k) + "]",
         "expected beamwidth in (0, 180) deg, got " + num(g.tx_hpbw_deg[k]));
  need(g.panel.m_y > 0 && g.panel.m_y % 2 == 0, "geometry.panel.m_y", "expected even positive count, got " + std::to_string(g.panel.m_y));
  need(g.panel.m_z > 0 && g.panel.m_z % 2 == 0, "geometry.panel.m_z", "expected even positive count, got " + std::to_string(g.panel.m_z));
  auto spacing = [&](double v, const char* path) {
    if (v == 0.0) return;  // half wavelength
    const double lo = lam / 10.0 * (1 - 1e-12), hi = lam / 2.0 * (1 + 1e-12);
    need(finite(v) && v >= lo && v <= hi, path,
         "element spacing must lie in [lambda/10, lambda/2] = [" + num(lam / 10) + ", " + num(lam / 2) + "] m, got " + num(v));
  };
  spacing(g.panel.spacing_y_m, "geometry.panel.spacing_y_m");
  spacing(g.panel.spacing_z_m, "geometry.panel.spacing_z_m");

  const auto& k = c.channel.rician_k;
  need(k.k_max_db >= k.k_min_db, "channel.rician_k.k_max_db", "expected k_max_db >= k_min_db, got " + num(k.k_max_db));
  const auto& sp = c.channel.spectrum;
  need(sp.theta_m_deg > 0, "channel.spectrum.theta_m_deg", "expected positive spread in deg, got " + num(sp.theta_m_deg));
  need(sp.kappa >= 0, "channel.spectrum.kappa", "expected nonnegative concentration, got " + num(sp.kappa));
  need(sp.support_phi_deg[1] > sp.support_phi_deg[0], "channel.spectrum.support_phi_deg", "expected lo < hi");
  need(sp.support_theta_deg[1] > sp.support_theta_deg[0], "channel.spectrum.support_theta_deg", "expected lo < hi");
  bool frame_ok = true;
  try {
    parse_support_frame(sp.support_frame);
  } catch (const std::exception&) {
    frame_ok = false;
    need(false, "channel.spectrum.support_frame", "expected one of none|reflected|substituted, got \"" + sp.support_frame + "\"");
  }
  auto spectrum_ok = [&](double theta_g_deg, const std::string& path) {
    if (!frame_ok || sp.theta_m_deg <= 0 || sp.kappa < 0) return;
    SpectrumParams p{deg2rad(theta_g_deg), deg2rad(sp.theta_m_deg), deg2rad(sp.phi_g_deg), sp.kappa,
                     deg2rad(sp.support_theta_deg[0]), deg2rad(sp.support_theta_deg[1]),
                     deg2rad(sp.support_phi_deg[0]), deg2rad(sp.support_phi_deg[1]), parse_support_frame(sp.support_frame)};
    try {
      AngularSpectrum s(p);
    } catch (const std::exception& e) {
      need(false, path, std::string(e.what()) + " (theta_g = " + num(theta_g_deg) + " deg, frame " + sp.support_frame + ")");
    }
  };
  spectrum_ok(sp.theta_g_deg, "channel.spectrum.theta_g_deg");

  const auto& pl = c.channel.pathloss;
  need(pl.min_height_m > 0 && pl.max_height_m > pl.min_height_m, "channel.pathloss.max_height_m", "expected 0 < min_height_m < max_height_m");

  const auto& r = c.radio;
  need(finite(r.tx_power_dbm), "radio.tx_power_dbm", "expected finite power in dBm");
  need(r.reflection_amplitude >= 0 && r.reflection_amplitude <= 1, "radio.reflection_amplitude",
       "reflection amplitude must lie in [0, 1], got " + num(r.reflection_amplitude));
  need(r.bandwidth_hz > 0, "radio.bandwidth_hz", "expected positive bandwidth in Hz, got " + num(r.bandwidth_hz));
  need(finite(r.noise_psd_dbm_per_hz), "radio.noise_psd_dbm_per_hz", "expected finite PSD in dBm/Hz");
  need(finite(r.noise_figure_db) && r.noise_figure_db >= 0, "radio.noise_figure_db", "expected nonnegative dB, got " + num(r.noise_figure_db));
  need(r.pattern_domain == "amplitude" || r.pattern_domain == "power", "radio.pattern_domain",
       "expected one of amplitude|power, got \"" + r.pattern_domain + "\"");

  need(c.irs.cos_gain >= 2, "irs.cos_gain", "ERP gain must be >= 2 (linear), got " + num(c.irs.cos_gain));
  need(c.irs.cos3_gain >= 2, "irs.cos3_gain", "ERP gain must be >= 2 (linear), got " + num(c.irs.cos3_gain));

  const auto& b = c.benchmark;
  need(b.element_hpbw_deg > 0 && b.element_hpbw_deg < 360, "benchmark.element_hpbw_deg", "expected beamwidth in (0, 360) deg");
  need(b.element_max_attenuation_db > 0, "benchmark.element_max_attenuation_db", "expected positive dB");
  need(b.element_side_lobe_db > 0, "benchmark.element_side_lobe_db", "expected positive dB");
  need(std::abs(b.fixed_downtilt_deg) < 90, "benchmark.fixed_downtilt_deg", "expected |downtilt| < 90 deg");

  need(c.layout.isd_m > 0, "layout.isd_m", "expected positive distance in m, got " + num(c.layout.isd_m));
  need(c.layout.rings >= 0 && c.layout.rings <= 4, "layout.rings", "expected integer in [0, 4]");

  const auto& gr = c.grid;
  need(gr.points_per_axis >= 2, "grid.points_per_axis", "expected integer >= 2");
  need(gr.hex_radius_m > 0, "grid.hex_radius_m", "expected positive radius in m");
  need(gr.min_distance_m >= 0 && gr.min_distance_m < 2 * gr.hex_radius_m, "grid.min_distance_m",
       "expected distance in [0, 2 * hex_radius_m) m, got " + num(gr.min_distance_m));
  for (auto [h, path] : {std::pair{gr.ground_height_m, "grid.ground_height_m"}, std::pair{gr.aerial_height_m, "grid.aerial_height_m"}})
    need(h >= pl.min_height_m && h <= pl.max_height_m, path,
         "UE height must lie in [" + num(pl.min_height_m) + ", " + num(pl.max_height_m) + "] m, got " + num(h));

  need(c.budget.instances >= 1, "budget.instances", "expected integer >= 1");
  need(c.budget.draws_per_instance >= 1, "budget.draws_per_instance", "expected integer >= 1");

  const auto& ll = c.link_level;
  need(ll.instances >= 1, "link_level.instances", "expected integer >= 1");
  need(ll.draws_per_instance >= 1, "link_level.draws_per_instance", "expected integer >= 1");
  need(!ll.paths.empty(), "link_level.paths", "expected at least one path count");
  for (std::size_t i = 0; i < ll.paths.size(); ++i)
    need(ll.paths[i] >= 1, "link_level.paths[" + std::to_string(i) + "]", "path count must be >= 1");
  need(!ll.theta_g_deg.empty(), "link_level.theta_g_deg", "expected at least one angle");
  for (std::size_t i = 0; i < ll.theta_g_deg.size(); ++i)
    spectrum_ok(ll.theta_g_deg[i], "link_level.theta_g_deg[" + std::to_string(i) + "]");
  need(ll.erp_gain >= 2, "link_level.erp_gain", "ERP gain must be >= 2 (linear)");
  need(ll.ue_position_m[2] >= pl.min_height_m && ll.ue_position_m[2] <= pl.max_height_m, "link_level.ue_position_m[2]",
       "UE height outside pathloss validity");

  need(!c.schemes.empty(), "schemes", "expected at least one scheme");
  for (std::size_t i = 0; i < c.schemes.size(); ++i) {
    const auto& names = known_schemes();
    need(std::find(names.begin(), names.end(), c.schemes[i]) != names.end(), "schemes[" + std::to_string(i) + "]",
         "unknown scheme \"" + c.schemes[i] + "\" (expected fixed|3d_bf|irs_cos|irs_cos3)");
  }

  if (!is.empty()) throw ConfigError(std::move(is));
}

Config parse_config(const std::string& text) {
  Config c;
  json root;
  bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (!blank) {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError({{"<root>", std::string("malformed JSON: ") + e.what()}});
    }
  } else {
    root = json::object();
  }
  std::vector<ConfigIssue> issues;
  SchemaReader{issues}.run(root, c);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  const double lam = c.geometry.carrier_hz > 0 ? wavelength(c.geometry.carrier_hz) : 0.0;
  if (c.geometry.panel.spacing_y_m == 0.0) c.geometry.panel.spacing_y_m = lam / 2.0;
  if (c.geometry.panel.spacing_z_m == 0.0) c.geometry.panel.spacing_z_m = lam / 2.0;
  validate_config(c);
  return c;
}

std::string serialize_config(const Config& cfg) { return to_json(cfg).dump(2); }

std::string config_hash(const Config& cfg) {
  const std::string s = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace irsim
