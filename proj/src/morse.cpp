#include "icec/morse.hpp"

#include "icec/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace icec {

void MorseParams::validate() const {
  if (!(dissociation_energy > 0.0) || !(harmonic_frequency > 0.0) || !(equilibrium_distance > 0.0) ||
      !(reduced_mass > 0.0))
    throw InputError("Morse parameters must satisfy D_e, omega_e, R_e, mu > 0");
  const double xe = anharmonicity();
  if (!(xe < 0.5))
    throw InputError(fmt::format("Morse anharmonicity x_e = {} >= 1/2: no bound level", xe));
}

double MorseParams::range_parameter() const {
  return harmonic_frequency * std::sqrt(reduced_mass / (2.0 * dissociation_energy));
}

double MorseParams::anharmonicity() const { return harmonic_frequency / (4.0 * dissociation_energy); }

double MorseParams::lambda() const { return 2.0 * dissociation_energy / harmonic_frequency; }

double potential_value(const MorseParams& p, double r) {
  const double y = 1.0 - std::exp(-p.range_parameter() * (r - p.equilibrium_distance));
  return p.dissociation_energy * y * y - p.dissociation_energy;
}

std::vector<BoundLevel> bound_spectrum(const MorseParams& p) {
  p.validate();
  const double we = p.harmonic_frequency;
  const double wexe = we * we / (4.0 * p.dissociation_energy);
  const double lambda = p.lambda();
  std::vector<BoundLevel> levels;
  for (int nu = 0; nu + 0.5 < lambda; ++nu) {
    const double v = nu + 0.5;
    const double e = -p.dissociation_energy + we * v - wexe * v * v;
    if (e >= 0.0)
      break;
    levels.push_back({nu, e});
  }
  return levels;
}

namespace {

// L_n^(alpha)(z) by upward recurrence in the degree.
double laguerre(int n, double alpha, double z) {
  if (n == 0)
    return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - z;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - z) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

} // namespace

SampledWavefunction bound_wavefunction(const MorseParams& p, int nu, std::span<const double> grid) {
  p.validate();
  const double lambda = p.lambda();
  if (nu < 0 || !(nu + 0.5 < lambda))
    throw InputError(fmt::format("vibrational level {} is not bound (lambda = {:.4f})", nu, lambda));
  if (grid.size() < 2)
    throw InputError("wavefunction grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw InputError("wavefunction grid must be strictly increasing");
  if (!(grid.front() > 0.0))
    throw InputError("wavefunction grid must be positive");

  const double a = p.range_parameter();
  const double alpha = 2.0 * lambda - 2.0 * nu - 1.0;
  // log of N = sqrt(a nu! alpha / Gamma(2 lambda - nu))
  const double log_norm =
      0.5 * (std::log(a) + std::lgamma(nu + 1.0) + std::log(alpha) - std::lgamma(2.0 * lambda - nu));

  SampledWavefunction out;
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = 2.0 * lambda * std::exp(-a * (grid[i] - p.equilibrium_distance));
    const double log_env = log_norm + 0.5 * alpha * std::log(z) - 0.5 * z;
    const double poly = laguerre(nu, alpha, z);
    out.values[i] = log_env < -700.0 ? 0.0 : std::exp(log_env) * poly;
  }

  const double norm2 = trapezoid_product(grid, out.values, out.values);
  out.analytic_norm = norm2;
  out.well_resolved = std::abs(norm2 - 1.0) < 1e-6;
  if (norm2 > 0.0) {
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& v : out.values)
      v *= s;
  }
  return out;
}

int count_nodes(std::span<const double> psi, double rel_floor) {
  double peak = 0.0;
  for (double v : psi)
    peak = std::max(peak, std::abs(v));
  const double floor = rel_floor * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : psi) {
    if (std::abs(v) <= floor)
      continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign)
      ++nodes;
    last_sign = s;
  }
  return nodes;
}

} // namespace icec
