#pragma once

// Physical constants (CODATA 2018) and the handful of unit conversions the
// library needs. Everything internal is Hartree atomic units.

#include <string_view>

namespace icec::units {

inline constexpr double hartree_in_eV = 27.211386245988;
inline constexpr double bohr_in_angstrom = 0.529177210903;
inline constexpr double hartree_in_wavenumber = 219474.6313632;
inline constexpr double speed_of_light_au = 137.035999084;
inline constexpr double boltzmann_hartree_per_kelvin = 3.1668115634556e-6;
// 1 Mb = 1e-18 cm^2 = 1e-2 A^2.
inline constexpr double megabarn_in_angstrom2 = 1e-2;
inline constexpr double bohr2_in_megabarn = bohr_in_angstrom * bohr_in_angstrom / megabarn_in_angstrom2;

struct UnitSystem {
  double hartree_per_eV = 1.0 / hartree_in_eV;
  double bohr_per_angstrom = 1.0 / bohr_in_angstrom;
  double hartree_per_wavenumber = 1.0 / hartree_in_wavenumber;
  double megabarn_per_bohr2 = bohr2_in_megabarn;
  double speed_of_light_au = units::speed_of_light_au;
  double boltzmann_constant = boltzmann_hartree_per_kelvin;
};

inline constexpr UnitSystem unit_system{};

enum class Dimension { energy, length, area, temperature, inverse_energy, area_per_energy };

enum class Unit {
  hartree,
  eV,
  wavenumber,
  bohr,
  angstrom,
  bohr2,
  megabarn,
  cm2,
  kelvin,
  per_hartree,
  per_eV,
  bohr2_per_hartree,
  megabarn_per_eV,
};

Dimension dimension(Unit u);
std::string_view name(Unit u);

// Throws icec::InputError when the two units measure different things.
double convert(double value, Unit from, Unit to);

inline double eV(double x) { return x / hartree_in_eV; }
inline double to_eV(double hartree) { return hartree * hartree_in_eV; }
inline double angstrom(double x) { return x / bohr_in_angstrom; }
inline double wavenumber(double x) { return x / hartree_in_wavenumber; }
inline double megabarn(double x) { return x / bohr2_in_megabarn; }
inline double to_megabarn(double bohr2) { return bohr2 * bohr2_in_megabarn; }
inline double thermal_energy(double kelvin) { return kelvin * boltzmann_hartree_per_kelvin; }

} // namespace icec::units
