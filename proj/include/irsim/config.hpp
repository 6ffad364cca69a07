#pragma once

#include <irsim/fading.hpp>
#include <irsim/link.hpp>
#include <irsim/pathloss.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsim {

struct PanelConfig {
  int m_y = 10;
  int m_z = 10;
  double spacing_y_m = 0.0;  // 0 means half a wavelength
  double spacing_z_m = 0.0;
  bool operator==(const PanelConfig&) const = default;
};

struct GeometryConfig {
  double carrier_hz = 2e9;
  double irs_height_m = 25.0;
  double tx_distance_m = 0.559;
  std::array<double, 2> tx_hpbw_deg{87.0, 87.0};
  PanelConfig panel;
  bool operator==(const GeometryConfig&) const = default;
};

struct SpectrumConfig {
  double theta_g_deg = 15.0;
  double theta_m_deg = 15.0;
  double phi_g_deg = 270.0;
  double kappa = 0.5;
  std::array<double, 2> support_theta_deg{54.0, 90.0};
  std::array<double, 2> support_phi_deg{180.0, 360.0};
  std::string support_frame = "none";
  bool operator==(const SpectrumConfig&) const = default;
};

struct ChannelConfig {
  KModel rician_k;
  SpectrumConfig spectrum;
  PathlossTables pathloss;
  bool operator==(const ChannelConfig&) const = default;
};

struct RadioConfig {
  double tx_power_dbm = 10.0;
  double reflection_amplitude = 0.9;
  double noise_psd_dbm_per_hz = -174.0;
  double bandwidth_hz = 180e3;
  double noise_figure_db = 9.0;
  std::string pattern_domain = "amplitude";
  bool operator==(const RadioConfig&) const = default;
};

struct IrsConfig {
  double cos_gain = 4.0;
  double cos3_gain = 8.0;
  bool operator==(const IrsConfig&) const = default;
};

struct BenchmarkConfig {
  double element_gain_dbi = 8.0;
  double element_hpbw_deg = 65.0;
  double element_max_attenuation_db = 30.0;
  double element_side_lobe_db = 30.0;
  double fixed_downtilt_deg = 10.0;
  bool operator==(const BenchmarkConfig&) const = default;
};

struct LayoutConfig {
  double isd_m = 500.0;
  int rings = 1;
  bool operator==(const LayoutConfig&) const = default;
};

struct GridConfig {
  int points_per_axis = 50;
  double hex_radius_m = 100.0;
  double min_distance_m = 35.0;
  double ground_height_m = 1.5;
  double aerial_height_m = 120.0;
  bool operator==(const GridConfig&) const = default;
};

struct BudgetConfig {
  int instances = 50;
  int draws_per_instance = 500;
  bool operator==(const BudgetConfig&) const = default;
};

struct LinkLevelConfig {
  int instances = 10;
  int draws_per_instance = 300;
  std::vector<int> paths{5, 30};
  std::vector<double> theta_g_deg{15.0, 75.0};
  std::array<double, 3> ue_position_m{100.0, 0.0, 1.5};
  double erp_gain = 4.0;
  bool operator==(const LinkLevelConfig&) const = default;
};

struct Config {
  std::uint64_t seed = 1;
  GeometryConfig geometry;
  ChannelConfig channel;
  RadioConfig radio;
  IrsConfig irs;
  BenchmarkConfig benchmark;
  LayoutConfig layout;
  GridConfig grid;
  BudgetConfig budget;
  LinkLevelConfig link_level;
  std::vector<std::string> schemes{"fixed", "3d_bf", "irs_cos", "irs_cos3"};
  bool operator==(const Config&) const = default;
};

struct ConfigIssue {
  std::string path;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

const std::vector<std::string>& known_schemes();

// Parses a JSON document, fills defaults and validates. Throws ConfigError listing every issue.
Config parse_config(const std::string& text);
std::string serialize_config(const Config& cfg);
void validate_config(const Config& cfg);
std::string config_hash(const Config& cfg);

SupportFrame parse_support_frame(const std::string& s);
PatternDomain parse_pattern_domain(const std::string& s);

}  // namespace irsim
