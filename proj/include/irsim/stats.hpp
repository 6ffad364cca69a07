#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace irsim {

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

// sup |F_n - F| for a sample against a continuous CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS distance of empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

// sup_x (F_a(x) - F_b(x)) between two empirical CDFs; <= 0 means a dominates b everywhere.
inline double ecdf_excess(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> xs(a);
  xs.insert(xs.end(), b.begin(), b.end());
  double d = -1.0;
  for (double x : xs) {
    const double fa = double(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
    const double fb = double(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
    d = std::max(d, fa - fb);
  }
  return d;
}

inline double jain_index(const std::vector<double>& r) {
  double s = 0.0, s2 = 0.0;
  for (double v : r) {
    s += v;
    s2 += v * v;
  }
  if (s2 <= 0.0) return 1.0;
  return s * s / (static_cast<double>(r.size()) * s2);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 paired points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double mx = mean(lx), my = mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

// Moment estimator of the Rician factor from samples of |h|^2.
inline double rician_k_moment_estimate(const std::vector<double>& power) {
  double m2 = 0.0, m4 = 0.0;
  for (double p : power) {
    m2 += p;
    m4 += p * p;
  }
  m2 /= power.size();
  m4 /= power.size();
  const double r = std::sqrt(std::max(0.0, 2.0 * m2 * m2 - m4));
  return r / (m2 - r);
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, 0.1 * db); }

}  // namespace irsim
