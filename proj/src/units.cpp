#include "icec/units.hpp"

#include "icec/error.hpp"

#include <fmt/format.h>

namespace icec::units {

namespace {

struct UnitInfo {
  Dimension dim;
  double in_base; // value of one unit expressed in atomic units
  std::string_view name;
};

UnitInfo info(Unit u) {
  switch (u) {
  case Unit::hartree: return {Dimension::energy, 1.0, "Hartree"};
  case Unit::eV: return {Dimension::energy, 1.0 / hartree_in_eV, "eV"};
  case Unit::wavenumber: return {Dimension::energy, 1.0 / hartree_in_wavenumber, "cm^-1"};
  case Unit::bohr: return {Dimension::length, 1.0, "bohr"};
  case Unit::angstrom: return {Dimension::length, 1.0 / bohr_in_angstrom, "Angstrom"};
  case Unit::bohr2: return {Dimension::area, 1.0, "bohr^2"};
  case Unit::megabarn: return {Dimension::area, 1.0 / bohr2_in_megabarn, "Mb"};
  case Unit::cm2: return {Dimension::area, 1e18 / bohr2_in_megabarn, "cm^2"};
  case Unit::kelvin: return {Dimension::temperature, 1.0, "K"};
  case Unit::per_hartree: return {Dimension::inverse_energy, 1.0, "1/Hartree"};
  case Unit::per_eV: return {Dimension::inverse_energy, hartree_in_eV, "1/eV"};
  case Unit::bohr2_per_hartree: return {Dimension::area_per_energy, 1.0, "bohr^2/Hartree"};
  case Unit::megabarn_per_eV:
    return {Dimension::area_per_energy, hartree_in_eV / bohr2_in_megabarn, "Mb/eV"};
  }
  throw Error("unknown unit");
}

} // namespace

Dimension dimension(Unit u) { return info(u).dim; }
std::string_view name(Unit u) { return info(u).name; }

double convert(double value, Unit from, Unit to) {
  const auto a = info(from);
  const auto b = info(to);
  if (a.dim != b.dim)
    throw InputError(fmt::format("cannot convert {} to {}: incompatible dimensions", a.name, b.name));
  if (from == to)
    return value;
  return value * a.in_base / b.in_base;
}

} // namespace icec::units
