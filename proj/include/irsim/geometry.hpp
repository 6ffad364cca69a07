#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace irsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;

inline double wavelength(double carrier_hz) { return kSpeedOfLight / carrier_hz; }
inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_xy() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

// Row-major 3x3 rotation; columns are the local axes expressed in the global frame.
struct Rotation {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 apply(Vec3 v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Vec3 apply_inverse(Vec3 v) const {
    return {m[0] * v.x + m[3] * v.y + m[6] * v.z, m[1] * v.x + m[4] * v.y + m[7] * v.z,
            m[2] * v.x + m[5] * v.y + m[8] * v.z};
  }
  friend Rotation operator*(const Rotation& a, const Rotation& b) {
    Rotation r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += a.m[3 * i + k] * b.m[3 * k + j];
        r.m[3 * i + j] = s;
      }
    return r;
  }

  static Rotation about_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{c, -s, 0, s, c, 0, 0, 0, 1}};
  }
  static Rotation about_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{c, 0, s, 0, 1, 0, -s, 0, c}};
  }
  // Intrinsic Z-Y-Z Euler rotation.
  static Rotation zyz(double alpha, double beta, double gamma) {
    return about_z(alpha) * about_y(beta) * about_z(gamma);
  }
};

// Local frame of a TX or panel: boresight is local +X, local +Z is "up" before tilt.
struct Frame {
  Vec3 origin;
  Rotation rot;

  // yaw: boresight azimuth in the global XY plane; downtilt: positive tilts boresight below horizon.
  static Frame facing(Vec3 origin, double yaw, double downtilt = 0.0) {
    return {origin, Rotation::zyz(yaw, downtilt, 0.0)};
  }
  Vec3 to_local(Vec3 p) const { return rot.apply_inverse(p - origin); }
  Vec3 dir_to_local(Vec3 d) const { return rot.apply_inverse(d); }
  Vec3 to_global(Vec3 local) const { return origin + rot.apply(local); }
};

// Angles measured off the local boresight: theta from +X, phi = atan2(z, y) in the YZ plane.
struct LocalAngles {
  double theta = 0.0;
  double phi = 0.0;
};

inline Vec3 direction(LocalAngles a) {
  const double s = std::sin(a.theta);
  return {std::cos(a.theta), s * std::cos(a.phi), s * std::sin(a.phi)};
}

inline LocalAngles to_angles(Vec3 local_dir) {
  const double r = local_dir.norm();
  if (!(r > 0.0)) throw std::invalid_argument("zero-length direction");
  const double c = std::clamp(local_dir.x / r, -1.0, 1.0);
  double phi = std::atan2(local_dir.z, local_dir.y);
  if (phi >= kPi) phi -= 2.0 * kPi;
  return {std::acos(c), phi};
}

inline Vec3 unit(Vec3 v) {
  const double r = v.norm();
  if (!(r > 0.0)) throw std::invalid_argument("zero-length direction");
  return (1.0 / r) * v;
}

inline LocalAngles local_angles(const Frame& frame, Vec3 target) {
  return to_angles(frame.to_local(target));
}

inline LocalAngles local_angles(Vec3 origin, Vec3 boresight, Vec3 target) {
  const Vec3 b = unit(boresight);
  const double yaw = std::atan2(b.y, b.x);
  const double tilt = -std::asin(std::clamp(b.z, -1.0, 1.0));
  return local_angles(Frame::facing(origin, yaw, tilt), target);
}

// Uniform planar array in the local YZ plane. Element indices are 1-based and flattened
// row by row along Z.
struct IrsPanel {
  int m_y = 10;
  int m_z = 10;
  double d_y = 0.0;
  double d_z = 0.0;
  Vec3 center;
  double azimuth = 0.0;

  int size() const { return m_y * m_z; }

  Frame frame() const { return Frame::facing(center, azimuth); }

  std::pair<int, int> index_2d(int n) const {
    if (n < 1 || n > size())
      throw std::out_of_range("element index " + std::to_string(n) + " outside [1, " +
                              std::to_string(size()) + "]");
    const int k = n - 1;
    return {k / m_z + 1 - m_y / 2, k % m_z + 1 - m_z / 2};
  }

  int flat_index(int my, int mz) const { return (my + m_y / 2 - 1) * m_z + (mz + m_z / 2); }

  Vec3 element_offset(int n) const {
    const auto [my, mz] = index_2d(n);
    return {0.0, (my - 0.5) * d_y, (mz - 0.5) * d_z};
  }
};

inline Vec3 element_position(const IrsPanel& panel, int n) {
  return panel.frame().to_global(panel.element_offset(n));
}

}  // namespace irsim
