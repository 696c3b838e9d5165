#pragma once

// Dissociative (E > 0) nuclear states of a Morse curve, discretized as
// Dirichlet eigenstates of a finite radial box.

#include "icec/grid.hpp"
#include "icec/morse.hpp"

#include <vector>

namespace icec {

struct BoxSpec {
  double r_min = 0.3;     // bohr
  double r_max = 0.0;     // bohr; box size L
  std::size_t n_grid = 4000;
  double e_max = 0.0;     // highest retained continuum energy, Hartree

  RadialGrid grid() const { return {r_min, r_max, n_grid}; }
  void validate() const;
};

struct ContinuumState {
  double energy = 0.0; // relative to the curve asymptote
  double dos = 0.0;    // rho(E), 1/Hartree
  std::vector<double> wavefunction; // on the box grid, unit trapezoidal norm
};

struct ContinuumSet {
  RadialGrid grid;
  std::vector<ContinuumState> states; // energy ordered

  // Width of the energy cell [E_i, E_i + 1/rho_i) owned by state i.
  double cell_width(std::size_t i) const { return 1.0 / states[i].dos; }
};

struct BoxEigenstate {
  double energy = 0.0;
  std::vector<double> wavefunction;
};

// All eigenpairs of the 3-point finite-difference radial Hamiltonian with
// Dirichlet walls at r_min, r_max and energies in (e_lower, e_upper].
std::vector<BoxEigenstate> box_eigenstates(const MorseParams& p, const RadialGrid& grid,
                                           double e_lower, double e_upper);

// Continuum states with 0 < E <= box.e_max, each carrying rho(E).
// Throws InputError if fewer than two states fall in that window.
ContinuumSet box_states(const MorseParams& p, const BoxSpec& box);

// rho(E_i) = 1 / |E_{i+1} - E_i|; the last state reuses the preceding gap.
double density_of_states(const std::vector<ContinuumState>& states, std::size_t index);

} // namespace icec
