#pragma once

#include <irsim/geometry.hpp>
#include <irsim/patterns.hpp>
#include <irsim/quadrature.hpp>
#include <irsim/rng.hpp>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>
#include <vector>

namespace irsim {

enum class Regime { ground, aerial };

struct KModel {
  double ground_intercept_db = 13.0;
  double ground_slope_db_per_m = 0.03;
  double k_min_db = 0.0;
  double k_max_db = 30.0;

  double k_min() const { return std::pow(10.0, 0.1 * k_min_db); }
  double k_max() const { return std::pow(10.0, 0.1 * k_max_db); }
  double a1() const { return k_min(); }
  double a2() const { return std::log(k_max() / k_min()) / (0.5 * kPi); }
  bool operator==(const KModel&) const = default;
};

// LoS Rician factor (linear). height_gap = |H_u - H_I|.
inline double rician_k(double d_u, double height_gap, Regime regime, const KModel& m) {
  double k;
  if (regime == Regime::ground) {
    k = std::pow(10.0, 0.1 * (m.ground_intercept_db - m.ground_slope_db_per_m * d_u));
  } else {
    const double elev = std::asin(std::clamp(std::abs(height_gap) / d_u, 0.0, 1.0));
    k = m.a1() * std::exp(m.a2() * elev);
  }
  return std::clamp(k, m.k_min(), m.k_max());
}

// Which angle the theta-range of the support box constrains.
enum class SupportFrame { none, reflected, substituted };

struct SpectrumParams {
  double theta_g = kPi / 12.0;
  double theta_m = kPi / 12.0;
  double phi_g = 1.5 * kPi;
  double kappa = 0.5;
  double box_theta_lo = 0.3 * kPi;
  double box_theta_hi = 0.5 * kPi;
  double box_phi_lo = kPi;
  double box_phi_hi = 2.0 * kPi;
  SupportFrame frame = SupportFrame::none;
  bool operator==(const SpectrumParams&) const = default;
};

// Scatterer power angular spectrum: truncated cosine PDF in theta (angle off the panel
// boresight) times truncated von Mises PDF in phi (azimuth in the panel plane).
class AngularSpectrum {
 public:
  explicit AngularSpectrum(SpectrumParams p) : p_(p) {
    if (!(p.theta_m > 0.0)) throw std::invalid_argument("spectrum: theta_m must be positive");
    if (!(p.kappa >= 0.0)) throw std::invalid_argument("spectrum: kappa must be nonnegative");
    lo_ = std::max(0.0, p.theta_g - p.theta_m);
    hi_ = std::min(kPi, p.theta_g + p.theta_m);
    if (p.frame == SupportFrame::substituted) {
      lo_ = std::max(lo_, p.box_theta_lo);
      hi_ = std::min(hi_, p.box_theta_hi);
    } else if (p.frame == SupportFrame::reflected) {
      lo_ = std::max(lo_, 0.5 * kPi - p.box_theta_hi);
      hi_ = std::min(hi_, 0.5 * kPi - p.box_theta_lo);
    }
    if (!(hi_ > lo_)) throw std::invalid_argument("spectrum: theta support is empty after clipping");
    if (!(p.box_phi_hi > p.box_phi_lo)) throw std::invalid_argument("spectrum: phi support is empty");
    s_lo_ = s(lo_);
    s_hi_ = s(hi_);
    z_phi_ = integrate([&](double ph) { return vm(ph); }, p.box_phi_lo, p.box_phi_hi, {1e-13, 18});
  }

  const SpectrumParams& params() const { return p_; }
  double theta_lo() const { return lo_; }
  double theta_hi() const { return hi_; }
  double phi_lo() const { return p_.box_phi_lo; }
  double phi_hi() const { return p_.box_phi_hi; }

  double f1(double theta) const {
    if (theta < lo_ || theta > hi_) return 0.0;
    const double c = std::cos(0.5 * kPi * (theta - p_.theta_g) / p_.theta_m);
    return 0.5 * kPi / p_.theta_m * c / (s_hi_ - s_lo_);
  }
  double f2(double phi) const {
    if (phi < p_.box_phi_lo || phi > p_.box_phi_hi) return 0.0;
    return vm(phi) / z_phi_;
  }
  // P_S(theta, phi) for a link with Rician factor k.
  double density(double theta, double phi, double k) const { return f1(theta) * f2(phi) / (k + 1.0); }

  double sample_theta(Rng& rng) const {
    const double u = s_lo_ + rng.uniform() * (s_hi_ - s_lo_);
    return p_.theta_g + 2.0 * p_.theta_m / kPi * std::asin(std::clamp(u, -1.0, 1.0));
  }
  double sample_phi(Rng& rng) const {
    for (;;) {
      const double ph = rng.uniform(p_.box_phi_lo, p_.box_phi_hi);
      if (rng.uniform() <= std::exp(p_.kappa * (std::cos(ph - p_.phi_g) - 1.0))) return ph;
    }
  }
  LocalAngles sample(Rng& rng) const {
    const double th = sample_theta(rng);
    return {th, sample_phi(rng)};
  }

  // Weighted average of gain(direction) over the spectrum, i.e. (K+1) * E_NLoS.
  template <class G>
    requires std::invocable<G, Vec3>
  double average(G&& gain, QuadratureOptions opt = {1e-9, 16}) const {
    return integrate2([&](double th, double ph) { return f1(th) * f2(ph) * gain(direction({th, ph})); }, lo_,
                      hi_, p_.box_phi_lo, p_.box_phi_hi, opt);
  }
  double average(const IrsErp& erp) const {
    return integrate([&](double th) { return f1(th) * erp.g_i * erp.shape_theta(th); }, lo_, hi_, {1e-12, 18});
  }
  double average(const Pattern& p) const {
    if (const auto* erp = std::get_if<IrsErp>(&p)) return average(*erp);
    return average([&](Vec3 u) { return pattern_gain(p, u); });
  }

 private:
  double s(double theta) const { return std::sin(0.5 * kPi * (theta - p_.theta_g) / p_.theta_m); }
  double vm(double phi) const { return std::exp(p_.kappa * std::cos(phi - p_.phi_g)); }

  SpectrumParams p_;
  double lo_ = 0.0, hi_ = 0.0, s_lo_ = 0.0, s_hi_ = 0.0, z_phi_ = 1.0;
};

inline double e_nlos(const AngularSpectrum& spectrum, const Pattern& pattern, double k) {
  return spectrum.average(pattern) / (k + 1.0);
}

struct FadingStats {
  double k = 0.0;
  double k_prime = 0.0;
  double g_k = 0.0;
  double rho = 1.0;
  double e_nlos = 1.0;
  double upsilon = 0.0;
  double sigma = std::sqrt(0.5);
};

// los_gain = G F at the UE direction; spectrum_avg = (K+1) E_NLoS, independent of K.
inline FadingStats erp_modified_stats(double k, double los_gain, double spectrum_avg) {
  if (!(k >= 0.0)) throw std::invalid_argument("Rician factor must be nonnegative");
  if (!(spectrum_avg > 0.0)) throw std::invalid_argument("E_NLoS must be positive");
  FadingStats s;
  s.k = k;
  s.e_nlos = spectrum_avg / (k + 1.0);
  s.rho = s.e_nlos + los_gain * k / (k + 1.0);
  s.k_prime = los_gain * k / ((k + 1.0) * s.e_nlos);
  s.g_k = los_gain / spectrum_avg;
  s.upsilon = std::sqrt(s.rho * s.k_prime / (s.k_prime + 1.0));
  s.sigma = std::sqrt(s.rho / (2.0 * (s.k_prime + 1.0)));
  return s;
}

inline FadingStats erp_modified_stats(double k, const Pattern& pattern, LocalAngles los_dir,
                                      const AngularSpectrum& spectrum) {
  return erp_modified_stats(k, pattern_gain(pattern, los_dir), spectrum.average(pattern));
}

inline double sample_fading_analytic(Rng& rng, const FadingStats& s) {
  const double re = s.upsilon + s.sigma * rng.normal();
  const double im = s.sigma * rng.normal();
  return std::hypot(re, im);
}

inline std::complex<double> sample_fading_complex(Rng& rng, const FadingStats& s, double los_phase) {
  const double re = s.sigma * rng.normal();
  const double im = s.sigma * rng.normal();
  return std::polar(s.upsilon, los_phase) + std::complex<double>(re, im);
}

// P(|xi'|^2 <= x) for xi' ~ Rice(upsilon', sigma').
inline double rician_power_cdf(const FadingStats& s, double x) {
  if (x <= 0.0) return 0.0;
  const double s2 = s.sigma * s.sigma;
  if (s2 <= 0.0) return x >= s.upsilon * s.upsilon ? 1.0 : 0.0;
  const double lambda = s.upsilon * s.upsilon / s2;
  if (lambda <= 0.0) return -std::expm1(-x / (2.0 * s2));
  boost::math::non_central_chi_squared dist(2.0, lambda);
  return boost::math::cdf(dist, x / s2);
}

struct PathSet {
  std::vector<LocalAngles> angles;
  std::vector<double> gains;  // G F at each path direction
};

inline PathSet draw_paths(Rng& rng, const AngularSpectrum& spectrum, const Pattern& pattern, int n_p) {
  if (n_p < 1) throw std::invalid_argument("path count must be at least 1");
  PathSet ps;
  ps.angles.reserve(n_p);
  ps.gains.reserve(n_p);
  for (int i = 0; i < n_p; ++i) {
    ps.angles.push_back(spectrum.sample(rng));
    ps.gains.push_back(pattern_gain(pattern, ps.angles.back()));
  }
  return ps;
}

// Equal-power scattered paths with fresh uniform phases plus the ERP-weighted LoS term.
inline std::complex<double> multipath_channel(Rng& rng, double k, double los_gain, double los_phase,
                                              const PathSet& paths) {
  const double n_p = static_cast<double>(paths.gains.size());
  const double a = std::sqrt(1.0 / ((k + 1.0) * n_p));
  std::complex<double> h = std::polar(std::sqrt(k / (k + 1.0) * los_gain), los_phase);
  for (double g : paths.gains) h += std::polar(std::sqrt(g) * a, -rng.phase());
  return h;
}

inline std::complex<double> sample_fading_multipath_oracle(Rng& rng, double k, const Pattern& pattern,
                                                           LocalAngles los_dir, const AngularSpectrum& spectrum,
                                                           int n_p, double los_phase = 0.0) {
  const PathSet ps = draw_paths(rng, spectrum, pattern, n_p);
  return multipath_channel(rng, k, pattern_gain(pattern, los_dir), los_phase, ps);
}

}  // namespace irsim
