#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace icec {

// Uniform radial grid including both end points.
struct RadialGrid {
  double r_min = 0.3;
  double r_max = 16.0;
  std::size_t n_points = 4000;

  double step() const { return (r_max - r_min) / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const { return r_min + step() * static_cast<double>(i); }
  std::vector<double> points() const {
    std::vector<double> r(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
      r[i] = at(i);
    return r;
  }
};

// Trapezoidal quadrature of f on the abscissae x.
inline double trapezoid(std::span<const double> x, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

// Trapezoidal overlap integral of a*b on the abscissae x.
inline double trapezoid_product(std::span<const double> x, std::span<const double> a,
                                std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (a[i] * b[i] + a[i - 1] * b[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

} // namespace icec
