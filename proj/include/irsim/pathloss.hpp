#pragma once

#include <irsim/geometry.hpp>
#include <irsim/rng.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irsim {

// UMa (terrestrial) and UMa-AV (aerial) coefficients. Values default to TR 38.901 / TR 36.777.
struct PathlossTables {
  // terrestrial, 1.5 m <= h_ut <= aerial_min_height
  double los_intercept_db = 28.0;
  double los_distance_slope = 22.0;
  double los_far_distance_slope = 40.0;
  double los_breakpoint_coeff = 9.0;
  double freq_slope = 20.0;
  double effective_env_height_m = 1.0;
  double nlos_intercept_db = 13.54;
  double nlos_distance_slope = 39.08;
  double nlos_height_coeff = 0.6;
  double nlos_height_ref_m = 1.5;
  double plos_d1_m = 18.0;
  double plos_d2_m = 63.0;
  // aerial
  double aerial_min_height_m = 22.5;
  double aerial_full_los_height_m = 100.0;
  double aerial_nlos_intercept_db = -17.5;
  double aerial_nlos_distance_slope = 46.0;
  double aerial_nlos_height_slope = 7.0;
  double aerial_d1_log_coeff = 460.0;
  double aerial_d1_offset = -700.0;
  double aerial_p1_log_coeff = 4300.0;
  double aerial_p1_offset = -3800.0;
  double max_height_m = 300.0;
  double min_height_m = 1.5;

  bool operator==(const PathlossTables&) const = default;
};

struct LinkState {
  bool los = true;
  double pathloss_db = 0.0;
  double g = 1.0;  // reciprocal of the linear pathloss
};

class PathlossModel {
 public:
  PathlossModel(double carrier_hz, double bs_height_m, PathlossTables t = {})
      : fc_(carrier_hz), h_bs_(bs_height_m), t_(t) {}

  double carrier_hz() const { return fc_; }
  const PathlossTables& tables() const { return t_; }

  double beta0() const {
    const double k = 4.0 * kPi * fc_ / kSpeedOfLight;
    return 1.0 / (k * k);
  }

  bool aerial(double h_ut) const { return h_ut > t_.aerial_min_height_m; }

  void check_height(double h_ut) const {
    if (!(h_ut >= t_.min_height_m && h_ut <= t_.max_height_m))
      throw std::domain_error("UE height " + std::to_string(h_ut) + " m outside pathloss validity");
  }

  double los_probability(double d2, double h_ut) const {
    check_height(h_ut);
    if (aerial(h_ut)) {
      if (h_ut > t_.aerial_full_los_height_m) return 1.0;
      const double lh = std::log10(h_ut);
      const double d1 = std::max(t_.aerial_d1_log_coeff * lh + t_.aerial_d1_offset, t_.plos_d1_m);
      const double p1 = t_.aerial_p1_log_coeff * lh + t_.aerial_p1_offset;
      if (d2 <= d1) return 1.0;
      return d1 / d2 + std::exp(-d2 / p1) * (1.0 - d1 / d2);
    }
    if (d2 <= t_.plos_d1_m) return 1.0;
    return t_.plos_d1_m / d2 + std::exp(-d2 / t_.plos_d2_m) * (1.0 - t_.plos_d1_m / d2);
  }

  double breakpoint_m(double h_ut) const {
    const double he = t_.effective_env_height_m;
    return 4.0 * (h_bs_ - he) * (h_ut - he) * fc_ / kSpeedOfLight;
  }

  double los_db(double d3, double d2, double h_ut) const {
    check_height(h_ut);
    const double lf = t_.freq_slope * std::log10(fc_ / 1e9);
    const double near = t_.los_intercept_db + t_.los_distance_slope * std::log10(d3) + lf;
    if (aerial(h_ut)) return near;
    const double dbp = breakpoint_m(h_ut);
    if (d2 <= dbp) return near;
    const double dh = h_bs_ - h_ut;
    return t_.los_intercept_db + t_.los_far_distance_slope * std::log10(d3) + lf -
           t_.los_breakpoint_coeff * std::log10(dbp * dbp + dh * dh);
  }

  double nlos_db(double d3, double d2, double h_ut) const {
    check_height(h_ut);
    const double f_ghz = fc_ / 1e9;
    if (aerial(h_ut)) {
      return t_.aerial_nlos_intercept_db +
             (t_.aerial_nlos_distance_slope - t_.aerial_nlos_height_slope * std::log10(h_ut)) * std::log10(d3) +
             20.0 * std::log10(40.0 * kPi * f_ghz / 3.0);
    }
    const double nl = t_.nlos_intercept_db + t_.nlos_distance_slope * std::log10(d3) +
                      t_.freq_slope * std::log10(f_ghz) - t_.nlos_height_coeff * (h_ut - t_.nlos_height_ref_m);
    return std::max(los_db(d3, d2, h_ut), nl);
  }

  LinkState evaluate(bool los, Vec3 ue, Vec3 bs) const {
    const Vec3 d = ue - bs;
    const double d3 = d.norm(), d2 = d.norm_xy();
    const double pl = los ? los_db(d3, d2, ue.z) : nlos_db(d3, d2, ue.z);
    return {los, pl, std::pow(10.0, -0.1 * pl)};
  }

 private:
  double fc_;
  double h_bs_;
  PathlossTables t_;
};

inline LinkState sample_link_state(Rng& rng, Vec3 ue, Vec3 bs, const PathlossModel& model) {
  const double p = model.los_probability((ue - bs).norm_xy(), ue.z);
  return model.evaluate(rng.uniform() < p, ue, bs);
}

}  // namespace irsim
