#pragma once

#include <cmath>

namespace irsim {

// Laguerre polynomial of order 1/2, i.e. 1F1(-1/2; 1; x), for x <= 0.
inline double laguerre_half(double x) {
  if (std::abs(x) < 1e-3) {
    // 1F1(-1/2;1;x) = 1 - x/2 - x^2/16 - x^3/96 + ...
    return 1.0 - 0.5 * x - x * x / 16.0 - x * x * x / 96.0;
  }
  if (x < -700.0) {
    const double y = -x;
    // sum_n ((-1/2)_n)^2 / n! y^-n; terms shrink fast for y > 700.
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 6; ++n) {
      term *= (n - 1.5) * (n - 1.5) / (n * y);
      sum += term;
    }
    return 2.0 / std::sqrt(M_PI) * std::sqrt(y) * sum;
  }
  const double h = -0.5 * x;
  return std::exp(0.5 * x) * ((1.0 - x) * std::cyl_bessel_i(0.0, h) - x * std::cyl_bessel_i(1.0, h));
}

}  // namespace irsim
