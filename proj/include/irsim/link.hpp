#pragma once

#include <irsim/fading.hpp>
#include <irsim/geometry.hpp>
#include <irsim/patterns.hpp>
#include <irsim/rng.hpp>
#include <irsim/special.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace irsim {

// power: w_n = sqrt(F_tx F_i g_TI); amplitude: w_n = F_tx F_i sqrt(g_TI).
enum class PatternDomain { power, amplitude };

struct ElementWeights {
  std::vector<double> w;
  std::vector<double> d_ti;
  double w_min = 0.0;
  double w_max = 0.0;

  double sum() const {
    double s = 0.0;
    for (double x : w) s += x;
    return s;
  }
  double sum_sq() const {
    double s = 0.0;
    for (double x : w) s += x * x;
    return s;
  }
};

// TX sits on the panel boresight at distance tx_distance and faces the panel center.
inline Frame tx_frame(const IrsPanel& panel, double tx_distance) {
  const Vec3 pos = panel.frame().to_global({tx_distance, 0.0, 0.0});
  return Frame::facing(pos, panel.azimuth + kPi);
}

inline ElementWeights element_weights(const Frame& tx, const CosinePattern& tx_pattern, const IrsPanel& panel,
                                      const IrsErp& erp, double beta0, PatternDomain domain) {
  const Frame pf = panel.frame();
  if (std::abs(pf.to_local(tx.origin).x) < 1e-12)
    throw std::invalid_argument("TX lies on the panel plane");
  ElementWeights out;
  const int n = panel.size();
  out.w.resize(n);
  out.d_ti.resize(n);
  for (int i = 1; i <= n; ++i) {
    const Vec3 e = element_position(panel, i);
    const Vec3 d = e - tx.origin;
    const double dist = d.norm();
    const double f_tx = tx_pattern.shape(unit(tx.dir_to_local(d)));
    const double f_i = erp.shape(unit(pf.dir_to_local(tx.origin - e)));
    const double f = f_tx * f_i;
    const double g = beta0 / (dist * dist);
    out.d_ti[i - 1] = dist;
    out.w[i - 1] = domain == PatternDomain::power ? std::sqrt(f * g) : f * std::sqrt(g);
  }
  const auto [mn, mx] = std::minmax_element(out.w.begin(), out.w.end());
  out.w_min = *mn;
  out.w_max = *mx;
  return out;
}

struct ReflectionCoeff {
  double amplitude = 1.0;
  double phase = 0.0;
};

struct LinkRealization {
  std::vector<double> w;
  std::vector<double> xi;
  std::vector<double> psi;
  double b0 = 1.0;  // P_t G_tx G_i g_u A^2

  std::size_t size() const { return w.size(); }
};

inline double link_b0(double p_t, double g_tx, double g_i, double g_u, double amplitude) {
  return p_t * g_tx * g_i * g_u * amplitude * amplitude;
}

inline double received_power(const LinkRealization& r, const std::vector<double>& zeta) {
  if (zeta.size() != r.size() || r.xi.size() != r.size() || r.psi.size() != r.size())
    throw std::invalid_argument("realization and phase vector sizes differ");
  std::complex<double> s = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) s += std::polar(r.w[n] * r.xi[n], zeta[n] + r.psi[n]);
  return r.b0 * std::norm(s);
}

inline std::vector<double> beamform_phases(const LinkRealization& r) {
  std::vector<double> z(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    double v = std::fmod(-r.psi[n], 2.0 * kPi);
    if (v < 0.0) v += 2.0 * kPi;
    z[n] = v;
  }
  return z;
}

inline double coherent_power(const LinkRealization& r) {
  double s = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) s += r.w[n] * r.xi[n];
  return r.b0 * s * s;
}

// Non-serving panel: effective phases eps_n i.i.d. uniform on [0, 2pi).
inline double random_scatter_power(const LinkRealization& r, Rng& rng) {
  std::complex<double> s = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) s += std::polar(r.w[n] * r.xi[n], rng.phase());
  return r.b0 * std::norm(s);
}

struct RicianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

inline RicianMoments rician_sum_moments(const FadingStats& s) {
  RicianMoments m;
  if (s.k_prime > 1e12) {
    m.mean = std::sqrt(s.rho);
  } else {
    m.mean = std::sqrt(s.rho * kPi / (4.0 * (s.k_prime + 1.0))) * laguerre_half(-s.k_prime);
  }
  m.variance = std::max(0.0, s.rho - m.mean * m.mean);
  return m;
}

struct PowerBounds {
  double s_lb = 0.0;
  double s_ub = 0.0;
  double i_lb = 0.0;
  double i_ub = 0.0;
};

inline std::pair<double, double> mean_signal_bounds(double b0, double w_min, double w_max, int n,
                                                    const RicianMoments& m) {
  const double nn = static_cast<double>(n);
  const double core = nn * nn * m.mean * m.mean + nn * m.variance;
  return {b0 * w_min * w_min * core, b0 * w_max * w_max * core};
}

inline std::pair<double, double> mean_interference_bounds(double b0, double rho, double w_min, double w_max, int n) {
  return {b0 * rho * n * w_min * w_min, b0 * rho * n * w_max * w_max};
}

}  // namespace irsim
