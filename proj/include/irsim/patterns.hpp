#pragma once

#include <irsim/geometry.hpp>
#include <irsim/quadrature.hpp>

#include <cmath>
#include <complex>
#include <concepts>
#include <algorithm>
#include <stdexcept>
#include <vector>
#include <variant>

namespace irsim {

// Direction from zenith angle (off local +Z) and azimuth (off local +X).
inline Vec3 zenith_direction(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

// Closed-surface integral of f(u) over the unit sphere, u a local unit vector.
template <class F>
double sphere_integral(F&& f, QuadratureOptions opt = {}) {
  return integrate2([&](double th, double ph) { return f(zenith_direction(th, ph)) * std::sin(th); },
                    0.0, kPi, -kPi, kPi, opt);
}

inline double hpbw(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("hpbw: exponent must be positive");
  return 2.0 * std::acos(std::pow(2.0, -1.0 / (2.0 * q)));
}

inline double q_for_hpbw(double mu) {
  if (!(mu > 0.0 && mu < kPi)) throw std::invalid_argument("q_for_hpbw: beamwidth outside (0, pi)");
  return std::log(0.5) / (2.0 * std::log(std::cos(0.5 * mu)));
}

struct Footprint {
  double alpha = 0.0;
  double beta = 0.0;
  double area = 0.0;
};

inline Footprint footprint_design(double mu_y, double mu_z, double d) {
  if (!(mu_y > 0.0 && mu_y < kPi && mu_z > 0.0 && mu_z < kPi))
    throw std::invalid_argument("footprint_design: degenerate beamwidth");
  if (!(d > 0.0)) throw std::invalid_argument("footprint_design: distance must be positive");
  Footprint f;
  f.alpha = d * std::tan(0.5 * mu_y);
  f.beta = d * std::tan(0.5 * mu_z);
  f.area = kPi * f.alpha * f.beta;
  return f;
}

// TX-panel distance whose HPBW ellipse circumscribes a panel of side m * spacing.
inline double tx_distance_for_panel(int m, double spacing, double mu) {
  if (!(mu > 0.0 && mu < kPi)) throw std::invalid_argument("tx_distance_for_panel: degenerate beamwidth");
  return m * spacing / (std::sqrt(2.0) * std::tan(0.5 * mu));
}

// sin^{2qz}(theta) cos^{2qy}(phi) in zenith/azimuth coordinates of the TX frame, front half only.
struct CosinePattern {
  double q_y = 1.0;
  double q_z = 1.0;
  double g_max = 6.0;

  double shape(Vec3 u) const {
    if (u.x <= 0.0) return 0.0;
    const double rho2 = u.x * u.x + u.y * u.y;
    if (rho2 <= 0.0) return 0.0;
    return std::pow(rho2, q_z) * std::pow(u.x * u.x / rho2, q_y);
  }
  double gain(Vec3 u) const { return g_max * shape(u); }
  double peak_gain() const { return g_max; }

  double theta_integral(QuadratureOptions opt = {}) const {
    return integrate([&](double t) { return std::pow(std::sin(t), 2.0 * q_z + 1.0); }, 0.0, kPi, opt);
  }
  double phi_integral(QuadratureOptions opt = {}) const {
    return integrate([&](double p) { return std::pow(std::cos(p), 2.0 * q_y); }, -0.5 * kPi, 0.5 * kPi, opt);
  }
  double solid_angle_integral(QuadratureOptions opt = {}) const {
    return theta_integral(opt) * phi_integral(opt);
  }

  static CosinePattern from_exponents(double q_y, double q_z);
  static CosinePattern from_hpbw(double mu_y, double mu_z) {
    return from_exponents(q_for_hpbw(mu_y), q_for_hpbw(mu_z));
  }
};

inline double max_gain_numeric(const CosinePattern& p, QuadratureOptions opt = {}) {
  opt.rel_tol = std::min(opt.rel_tol, 1e-13);
  return 4.0 * kPi / p.solid_angle_integral(opt);
}

template <class F>
  requires std::invocable<F, Vec3>
double max_gain_numeric(F&& shape, QuadratureOptions opt = {}) {
  return 4.0 * kPi / sphere_integral(shape, opt);
}

inline CosinePattern CosinePattern::from_exponents(double q_y, double q_z) {
  if (!(q_y > 0.0 && q_z > 0.0)) throw std::invalid_argument("cosine pattern exponents must be positive");
  CosinePattern p{q_y, q_z, 1.0};
  p.g_max = max_gain_numeric(p);
  return p;
}

// cos^{g/2-1}(theta) off boresight on the front half-space.
struct IrsErp {
  double g_i = 4.0;

  double shape(Vec3 u) const {
    if (u.x <= 0.0) return 0.0;
    return std::pow(std::min(u.x, 1.0), 0.5 * g_i - 1.0);
  }
  double shape_theta(double theta) const {
    if (theta > 0.5 * kPi) return 0.0;
    return std::pow(std::max(std::cos(theta), 0.0), 0.5 * g_i - 1.0);
  }
  double gain(Vec3 u) const { return g_i * shape(u); }
  double peak_gain() const { return g_i; }
  double solid_angle_integral(QuadratureOptions opt = {}) const {
    return 2.0 * kPi * integrate([&](double t) { return shape_theta(t) * std::sin(t); }, 0.0, 0.5 * kPi, opt);
  }
  double solid_angle_closed_form() const { return 4.0 * kPi / g_i; }
};

// Parabolic-in-dB sector element with vertical/horizontal cuts capped at the attenuation limits.
// Directivity is obtained by normalizing the shape over the sphere; efficiency scales it down
// to the configured peak gain.
struct ThreeGppElement {
  double hpbw_deg = 65.0;
  double max_atten_db = 30.0;
  double side_lobe_db = 30.0;
  double directivity = 1.0;
  double efficiency = 1.0;

  double attenuation_db(Vec3 u) const {
    const double th = rad2deg(std::acos(std::clamp(u.z, -1.0, 1.0)));
    const double ph = rad2deg(std::atan2(u.y, u.x));
    const double av = -std::min(12.0 * std::pow((th - 90.0) / hpbw_deg, 2.0), side_lobe_db);
    const double ah = -std::min(12.0 * std::pow(ph / hpbw_deg, 2.0), max_atten_db);
    return std::min(-(av + ah), max_atten_db);
  }
  double shape(Vec3 u) const { return std::pow(10.0, -0.1 * attenuation_db(u)); }
  double gain(Vec3 u) const { return efficiency * directivity * shape(u); }
  double peak_gain() const { return efficiency * directivity; }
  // Split at the cap boundaries so each piece is smooth. The shape is even in phi.
  double solid_angle_integral(QuadratureOptions opt = {}) const {
    const auto reach = [&](double db) { return deg2rad(hpbw_deg * std::sqrt(std::max(db, 0.0) / 12.0)); };
    const auto shape_at = [&](double th, double ph) { return shape(zenith_direction(th, ph)) * std::sin(th); };
    QuadratureOptions inner = opt;
    inner.rel_tol = opt.rel_tol * 0.1;
    const auto theta_integral = [&](double ph) {
      const double ah = std::min(12.0 * std::pow(rad2deg(ph) / hpbw_deg, 2.0), max_atten_db);
      std::vector<double> cuts{0.0, kPi, 0.5 * kPi};
      for (double r : {reach(side_lobe_db), reach(max_atten_db - ah)}) {
        if (r <= 0.0) continue;
        cuts.push_back(0.5 * kPi - r);
        cuts.push_back(0.5 * kPi + r);
      }
      std::erase_if(cuts, [](double t) { return t < 0.0 || t > kPi; });
      std::sort(cuts.begin(), cuts.end());
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        sum += integrate([&](double th) { return shape_at(th, ph); }, cuts[i], cuts[i + 1], inner);
      return sum;
    };
    const double pc = std::min(reach(max_atten_db), kPi);
    return 2.0 * (integrate(theta_integral, 0.0, pc, opt) + integrate(theta_integral, pc, kPi, opt));
  }

  static ThreeGppElement make(double peak_gain_dbi, double hpbw_deg = 65.0, double max_atten_db = 30.0,
                              double side_lobe_db = 30.0) {
    ThreeGppElement e{hpbw_deg, max_atten_db, side_lobe_db, 1.0, 1.0};
    e.directivity = 4.0 * kPi / e.solid_angle_integral({1e-9, 18});
    e.efficiency = std::pow(10.0, 0.1 * peak_gain_dbi) / e.directivity;
    return e;
  }
};

// Fixed beam of an m_y x m_z array of 3GPP elements with an electrical downtilt phase taper.
struct UpaBeam {
  ThreeGppElement element;
  int m_y = 10;
  int m_z = 10;
  double spacing_wl = 0.5;
  double downtilt = 0.0;

  double array_factor(Vec3 u) const {
    const Vec3 u0{std::cos(downtilt), 0.0, -std::sin(downtilt)};
    const double k = 2.0 * kPi * spacing_wl;
    auto axis = [&](int m, double du) {
      std::complex<double> s = 0.0;
      for (int i = 0; i < m; ++i) s += std::polar(1.0, k * (i - 0.5 * (m - 1)) * du);
      return std::norm(s);
    };
    return axis(m_y, u.y - u0.y) * axis(m_z, u.z - u0.z) / (m_y * m_z);
  }
  double gain(Vec3 u) const { return element.gain(u) * array_factor(u); }
  double peak_gain() const { return m_y * m_z * element.peak_gain(); }
};

using Pattern = std::variant<CosinePattern, IrsErp, ThreeGppElement, UpaBeam>;

inline double pattern_gain(const Pattern& p, Vec3 local_dir) {
  const Vec3 u = unit(local_dir);
  return std::visit([&](const auto& x) { return x.gain(u); }, p);
}

inline double pattern_gain(const Pattern& p, LocalAngles a) { return pattern_gain(p, direction(a)); }

}  // namespace irsim
