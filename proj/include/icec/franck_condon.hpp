#pragma once

// Franck-Condon factors between vibrational states of two electronic curves.

#include "icec/continuum_box.hpp"
#include "icec/morse.hpp"

#include <iosfwd>
#include <map>
#include <vector>

namespace icec {

// Energy-normalized bound -> continuum factor |<nu|E>|^2 rho(E), sampled at
// the box energies. Integrals use the cells [E_i, E_i + width_i).
struct ContinuumDensity {
  std::vector<double> energies;
  std::vector<double> density; // 1/Hartree
  std::vector<double> widths;  // 1/rho(E_i)

  // Integral of the density up to `upper`, top cell clipped linearly.
  double integral(double upper) const;
  double integral() const;
};

struct FcTable {
  int initial_nu = 0;
  std::map<int, double> bound_factors;
  ContinuumDensity continuum;
  double sum_rule = 0.0; // bound sum + full continuum integral
};

double fc_bound_bound(const MorseParams& p_i, const MorseParams& p_f, int nu_i, int nu_f,
                      const RadialGrid& grid);

ContinuumDensity fc_bound_continuum(const MorseParams& p_i, const ContinuumSet& continuum,
                                    int nu_i);

// All bound factors into p_f plus the continuum density. With an empty
// continuum only the bound part contributes to the sum rule.
FcTable fc_table(const MorseParams& p_i, const MorseParams& p_f, const ContinuumSet& continuum,
                 int nu_i);
FcTable fc_table(const MorseParams& p_i, const MorseParams& p_f, const RadialGrid& grid, int nu_i);

// CSV dump: header `energy_eV,density_per_eV`.
void write_continuum_csv(std::ostream& os, const ContinuumDensity& density);

} // namespace icec
