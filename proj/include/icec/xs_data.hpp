#pragma once

// Photoionization / photorecombination cross-section tables.

#include "icec/morse.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace icec {

// Piecewise-linear cross section vs photon energy (atomic units internally).
// A one-point table is constant over an explicit validity window.
class CrossSectionTable {
public:
  CrossSectionTable() = default;

  // Throws InputError on size mismatch, fewer than two nodes, non-increasing
  // energies or negative values.
  static CrossSectionTable tabulated(std::vector<double> energies, std::vector<double> values,
                                     std::string label);
  static CrossSectionTable constant(double anchor_energy, double value, double window_lo,
                                    double window_hi, std::string label);

  // Throws RangeError outside [min_energy, max_energy]; no extrapolation.
  double interpolate(double omega) const;

  bool contains(double omega) const { return omega >= min_energy() && omega <= max_energy(); }
  double min_energy() const { return lo_; }
  double max_energy() const { return hi_; }
  bool is_constant() const { return energies_.size() == 1; }

  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }

private:
  std::vector<double> energies_;
  std::vector<double> values_;
  std::string label_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Reads `energy_eV,sigma_Mb` CSV (blank lines and `#` comments allowed).
// Errors name the data row and the file line.
CrossSectionTable load_table(std::istream& in, const std::string& label);
CrossSectionTable load_table(const std::filesystem::path& path);

// Detailed balance: sigma_PR = omega^2 / (2 eps c^2) * g_ratio * sigma_PI.
// Atomic units throughout; throws InputError for eps <= 0 or omega <= 0.
double pr_from_pi(double sigma_pi, double omega, double epsilon, double g_ratio);

// (nu, nu_plus) -> sigma_PI(omega)
using ResolvedPiSet = std::map<std::pair<int, int>, CrossSectionTable>;

// Loads every `pi_nu{nu}_nup{nup}.csv` in `dir`.
ResolvedPiSet load_resolved_set(const std::filesystem::path& dir);

// sigma_{nu nu+}(omega) = BR_{nu nu+}(omega) sigma_nu(omega), evaluated on the
// nodes of `partial`. Ratios must sum to one within 1e-3 at every node.
ResolvedPiSet resolve_branching_ratios(const CrossSectionTable& partial, int nu,
                                       const std::map<int, CrossSectionTable>& ratios);

// sigma_{nu a} / sigma_{nu b} = ratio(omega)
struct VRatio {
  int numerator = 0;
  int denominator = 0;
  CrossSectionTable ratio;
};

// Solves, per node of `partial`, the linear system made of the v-ratios plus
// sum_{nu+} sigma_{nu nu+} = sigma_nu. Throws InputError when singular.
ResolvedPiSet resolve_v_ratios(const CrossSectionTable& partial, int nu,
                               std::span<const int> final_levels, std::span<const VRatio> ratios);

} // namespace icec
