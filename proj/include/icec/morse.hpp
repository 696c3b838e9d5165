#pragma once

// Morse potential curves with the asymptote convention V(R -> inf) = V_inf,
// so bound vibrational energies (measured from V_inf) are negative.

#include "icec/grid.hpp"

#include <span>
#include <vector>

namespace icec {

// All fields in atomic units.
struct MorseParams {
  double dissociation_energy = 0.0; // D_e > 0
  double harmonic_frequency = 0.0;  // omega_e > 0
  double equilibrium_distance = 0.0;
  double reduced_mass = 0.0;
  double asymptote = 0.0; // absolute V(R -> inf) of this curve

  // Throws InputError on non-physical values or when no level is bound.
  void validate() const;

  double range_parameter() const;  // a = omega_e sqrt(mu / (2 D_e))
  double anharmonicity() const;    // x_e = omega_e / (4 D_e)
  double lambda() const;           // 2 D_e / omega_e
};

struct BoundLevel {
  int nu = 0;
  double energy = 0.0; // relative to the asymptote, in (-D_e, 0)
};

// Potential relative to the asymptote: D_e (1 - exp(-a (R - R_e)))^2 - D_e.
double potential_value(const MorseParams& p, double r);

std::vector<BoundLevel> bound_spectrum(const MorseParams& p);

struct SampledWavefunction {
  std::vector<double> values;
  // Trapezoidal norm of the closed-form function before renormalization.
  double analytic_norm = 0.0;
  // False when the grid is too coarse or too short to hold the state
  // (analytic norm off by more than 1e-6).
  bool well_resolved = true;
};

// Closed-form eigenfunction, renormalized to unit trapezoidal norm on `grid`.
// Throws InputError for nu outside the bound range or a non-increasing grid.
SampledWavefunction bound_wavefunction(const MorseParams& p, int nu, std::span<const double> grid);

// Sign changes between samples whose magnitude exceeds rel_floor * max|psi|.
int count_nodes(std::span<const double> psi, double rel_floor = 1e-8);

} // namespace icec
