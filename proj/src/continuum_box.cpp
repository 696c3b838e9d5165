#include "icec/continuum_box.hpp"

#include "icec/error.hpp"
#include "icec/tridiagonal.hpp"

#include <fmt/format.h>

#include <cmath>

namespace icec {

void BoxSpec::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw InputError(fmt::format("box must satisfy 0 < r_min < r_max (got {}, {})", r_min, r_max));
  if (n_grid < 500)
    throw InputError(fmt::format("box grid needs at least 500 points (got {})", n_grid));
  if (!(e_max > 0.0))
    throw InputError("box e_max must be positive");
}

std::vector<BoxEigenstate> box_eigenstates(const MorseParams& p, const RadialGrid& grid,
                                           double e_lower, double e_upper) {
  p.validate();
  const std::size_t n = grid.n_points;
  const double h = grid.step();
  const double kinetic = 1.0 / (2.0 * p.reduced_mass * h * h);

  // Interior points only; the wall values are zero.
  std::vector<double> diag(n - 2);
  std::vector<double> off(n - 3, -kinetic);
  for (std::size_t i = 1; i + 1 < n; ++i)
    diag[i - 1] = 2.0 * kinetic + potential_value(p, grid.at(i));

  const auto eig = tridiagonal_eigenpairs(diag, off, e_lower, e_upper);
  const double scale = 1.0 / std::sqrt(h);

  std::vector<BoxEigenstate> out(eig.values.size());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    out[k].energy = eig.values[k];
    auto& psi = out[k].wavefunction;
    psi.assign(n, 0.0);
    const auto& v = eig.vectors[k];
    // Fix the sign so the first significant lobe is positive.
    double sign = 0.0;
    for (double x : v)
      if (std::abs(x) > 1e-8) {
        sign = x > 0.0 ? 1.0 : -1.0;
        break;
      }
    if (sign == 0.0)
      sign = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      psi[i + 1] = sign * scale * v[i];
  }
  return out;
}

ContinuumSet box_states(const MorseParams& p, const BoxSpec& box) {
  box.validate();
  ContinuumSet set;
  set.grid = box.grid();
  for (auto& s : box_eigenstates(p, set.grid, 0.0, box.e_max)) {
    if (!(s.energy > 0.0))
      continue;
    set.states.push_back({s.energy, 0.0, std::move(s.wavefunction)});
  }
  if (set.states.size() < 2)
    throw InputError(fmt::format("box [{}, {}] bohr holds fewer than two continuum states below "
                                 "{:.6g} Hartree",
                                 box.r_min, box.r_max, box.e_max));
  for (std::size_t i = 0; i < set.states.size(); ++i)
    set.states[i].dos = density_of_states(set.states, i);
  return set;
}

double density_of_states(const std::vector<ContinuumState>& states, std::size_t index) {
  if (states.size() < 2)
    throw InputError("density of states needs at least two continuum states");
  if (index >= states.size())
    throw InputError(fmt::format("continuum index {} out of range", index));
  const std::size_t i = index + 1 < states.size() ? index : index - 1;
  const double gap = std::abs(states[i + 1].energy - states[i].energy);
  if (!(gap > 0.0))
    throw NumericalError(fmt::format("degenerate continuum energies at index {}", i));
  return 1.0 / gap;
}

} // namespace icec
