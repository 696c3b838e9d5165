#include "icec/franck_condon.hpp"

#include "icec/error.hpp"
#include "icec/units.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <ostream>

namespace icec {

double ContinuumDensity::integral(double upper) const {
  double s = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double w = std::clamp(upper - energies[i], 0.0, widths[i]);
    s += density[i] * w;
  }
  return s;
}

double ContinuumDensity::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i)
    s += density[i] * widths[i];
  return s;
}

double fc_bound_bound(const MorseParams& p_i, const MorseParams& p_f, int nu_i, int nu_f,
                      const RadialGrid& grid) {
  const auto r = grid.points();
  const auto a = bound_wavefunction(p_i, nu_i, r);
  const auto b = bound_wavefunction(p_f, nu_f, r);
  const double overlap = trapezoid_product(r, a.values, b.values);
  return overlap * overlap;
}

namespace {

ContinuumDensity project(std::span<const double> r, std::span<const double> psi,
                         const ContinuumSet& continuum) {
  ContinuumDensity out;
  out.energies.reserve(continuum.states.size());
  for (std::size_t k = 0; k < continuum.states.size(); ++k) {
    const auto& s = continuum.states[k];
    const double overlap = trapezoid_product(r, psi, s.wavefunction);
    out.energies.push_back(s.energy);
    out.density.push_back(overlap * overlap * s.dos);
    out.widths.push_back(continuum.cell_width(k));
  }
  return out;
}

} // namespace

ContinuumDensity fc_bound_continuum(const MorseParams& p_i, const ContinuumSet& continuum, int nu_i) {
  if (continuum.states.empty())
    throw InputError("bound-continuum factors need a non-empty continuum");
  const auto r = continuum.grid.points();
  const auto psi = bound_wavefunction(p_i, nu_i, r);
  return project(r, psi.values, continuum);
}

namespace {

FcTable assemble(const MorseParams& p_i, const MorseParams& p_f, const RadialGrid& grid,
                 const ContinuumSet* continuum, int nu_i) {
  const auto r = grid.points();
  const auto psi = bound_wavefunction(p_i, nu_i, r);
  FcTable t;
  t.initial_nu = nu_i;
  double sum = 0.0;
  for (const auto& level : bound_spectrum(p_f)) {
    const auto phi = bound_wavefunction(p_f, level.nu, r);
    const double ov = trapezoid_product(r, psi.values, phi.values);
    t.bound_factors[level.nu] = ov * ov;
    sum += ov * ov;
  }
  if (continuum && !continuum->states.empty()) {
    t.continuum = project(r, psi.values, *continuum);
    sum += t.continuum.integral();
  }
  t.sum_rule = sum;
  return t;
}

} // namespace

FcTable fc_table(const MorseParams& p_i, const MorseParams& p_f, const ContinuumSet& continuum,
                 int nu_i) {
  return assemble(p_i, p_f, continuum.grid, &continuum, nu_i);
}

FcTable fc_table(const MorseParams& p_i, const MorseParams& p_f, const RadialGrid& grid, int nu_i) {
  return assemble(p_i, p_f, grid, nullptr, nu_i);
}

void write_continuum_csv(std::ostream& os, const ContinuumDensity& density) {
  os << "energy_eV,density_per_eV\n";
  for (std::size_t i = 0; i < density.energies.size(); ++i)
    fmt::print(os, "{:.10e},{:.10e}\n", units::to_eV(density.energies[i]),
               density.density[i] / units::hartree_in_eV);
}

} // namespace icec
