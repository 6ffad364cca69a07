#pragma once

#include <irsim/config.hpp>
#include <irsim/fading.hpp>
#include <irsim/geometry.hpp>
#include <irsim/link.hpp>
#include <irsim/pathloss.hpp>
#include <irsim/patterns.hpp>
#include <irsim/rng.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace irsim {

struct Sector {
  int site = 0;
  Vec3 position;   // panel / array center
  double azimuth;  // boresight azimuth
};

struct CellLayout {
  double isd = 500.0;
  std::vector<Vec3> sites;
  std::vector<Sector> cells;  // cell c = 3 * site + sector
  int serving = 0;
};

CellLayout make_layout(double isd, int rings, double height);

// Hexagon of radius R with one vertex at the site and the opposite vertex at 2R along boresight.
bool in_sector_hexagon(double x, double y, double radius);
std::vector<Vec3> sector_grid(const GridConfig& g, double height);
Vec3 random_point_in_cell(Rng& rng, const Sector& cell, const GridConfig& g, double height);

inline double noise_power_w(double psd_dbm_per_hz, double bandwidth_hz) {
  return std::pow(10.0, 0.1 * (psd_dbm_per_hz - 30.0)) * bandwidth_hz;
}
inline double snr(double p_r, double noise_w) { return p_r / noise_w; }
inline double sinr(double s, double interference, double noise_w) { return s / (interference + noise_w); }
double ergodic_throughput(const std::vector<double>& gamma);

// Everything derived from a validated config that the simulators share.
struct Scenario {
  Config cfg;
  double lambda = 0.0;
  IrsPanel panel;  // serving panel; other cells reuse its shape
  CosinePattern tx_pattern;
  PathlossModel pathloss{2e9, 25.0};
  AngularSpectrum spectrum{SpectrumParams{}};
  KModel kmodel;
  CellLayout layout;
  double p_t_w = 0.01;
  double noise_w = 0.0;  // N0 B times the noise figure

  static Scenario build(const Config& cfg);
  SpectrumParams spectrum_params(double theta_g) const;
  Regime regime(double h_ut) const { return h_ut > cfg.geometry.irs_height_m ? Regime::aerial : Regime::ground; }
};

enum class SchemeKind { fixed, mrt, irs };

struct BsScheme {
  std::string name;
  std::string label;
  SchemeKind kind = SchemeKind::irs;
  Pattern pattern;            // per-link ERP used in the fading statistics
  double spectrum_avg = 1.0;  // (K+1) E_NLoS for this pattern
  int n_elements = 100;
  ElementWeights weights;     // IRS only
  double g_tx = 1.0;          // IRS only
  double g_i = 1.0;           // IRS only
};

BsScheme make_scheme(const Scenario& sc, const std::string& name);

struct LinkGeometry {
  double p_los = 1.0;
  LinkState state[2];    // [0] NLoS, [1] LoS
  FadingStats stats[2];  // [0] NLoS, [1] LoS
};

LinkGeometry link_geometry(const Scenario& sc, const BsScheme& scheme, const Sector& cell, Vec3 ue);

struct PointResult {
  Vec3 position;
  double rate = 0.0;          // bps/Hz
  double signal_w = 0.0;      // mean over draws
  double interference_w = 0.0;
};

struct SummaryStats {
  double r_bar = 0.0;
  double jain = 1.0;
  double s_bar_bar_db = 0.0;
  std::optional<double> i_bar_bar_db;
};

SummaryStats summarize(const std::vector<PointResult>& pts, bool with_interference);

struct CoverageGrid {
  std::string scheme;
  std::string label;
  double height = 0.0;
  bool multi_cell = false;
  std::vector<PointResult> points;
  SummaryStats summary;
};

struct CoverageOptions {
  bool multi_cell = false;
  int workers = 1;
  // Drop interference from the aggregate while keeping every draw identical (consistency checks).
  bool zero_interference = false;
};

PointResult simulate_point(const Scenario& sc, const BsScheme& scheme, Vec3 ue, std::size_t point_index,
                           const CoverageOptions& opt);

CoverageGrid run_coverage(const Scenario& sc, const BsScheme& scheme, double height, const CoverageOptions& opt);
CoverageGrid run_coverage_points(const Scenario& sc, const BsScheme& scheme, const std::vector<Vec3>& points,
                                 const CoverageOptions& opt);

struct BoundsEntry {
  std::string regime;    // ground | aerial
  std::string quantity;  // signal | interference
  double lb_w = 0.0;
  double ub_w = 0.0;
  double mc_w = 0.0;
  bool inside() const { return mc_w >= lb_w && mc_w <= ub_w; }
};

// Cell-averaged analytic bounds (expectation over LoS state, linear mean over the grid)
// alongside the Monte-Carlo cell averages of the multi-cell run.
std::vector<BoundsEntry> compute_bounds(const Scenario& sc, const std::string& scheme_name,
                                        const std::vector<std::pair<std::string, double>>& heights, int workers);

struct CdfSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> cdf;
};

struct LinkCdfSummary {
  double theta_g = 0.0;
  int n_p = 0;  // 0 for analytic series
  FadingStats stats;
  double ks = 0.0;
  double mean_power = 0.0;
};

struct LinkCdfResult {
  std::vector<CdfSeries> series;
  std::vector<LinkCdfSummary> summary;
  std::vector<std::vector<double>> oracle_samples;  // aligned with oracle entries of summary
};

LinkCdfResult run_link_cdf(const Scenario& sc, int workers);

}  // namespace irsim
