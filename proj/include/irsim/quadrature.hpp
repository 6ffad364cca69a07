#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace irsim {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
};

// Adaptive Gauss-Kronrod (61 points, Gauss-Legendre embedded) on [a, b].
template <class F>
double integrate(F&& f, double a, double b, QuadratureOptions opt = {}) {
  if (a == b) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  // Boost reports the top-level error of the [-1, 1] image without the (b - a) / 2 factor,
  // so map onto [-1, 1] here to keep error and tolerance in the same units.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return half * f(mid + half * x); }, -1.0, 1.0, opt.max_depth, opt.rel_tol, &err, &l1);
  if (!std::isfinite(v) || err > 1e3 * opt.rel_tol * std::max(l1, 1e-300))
    throw std::runtime_error("quadrature did not converge");
  return v;
}

// Iterated product rule over [ax, bx] x [ay, by]; f(x, y).
template <class F>
double integrate2(F&& f, double ax, double bx, double ay, double by, QuadratureOptions opt = {}) {
  QuadratureOptions inner = opt;
  inner.rel_tol = opt.rel_tol * 0.1;
  return integrate(
      [&](double x) { return integrate([&](double y) { return f(x, y); }, ay, by, inner); }, ax, bx,
      opt);
}

}  // namespace irsim
