#pragma once

#include "icec/config.hpp"
#include "icec/engine.hpp"
#include "icec/morse.hpp"
#include "icec/units.hpp"

#include <filesystem>
#include <string>

namespace testing {

// Morse constants of LiH and LiH+ (cation shares the neutral's reduced mass).
inline icec::MorseParams lih() {
  icec::MorseParams p;
  p.dissociation_energy = icec::units::eV(2.4924);
  p.harmonic_frequency = icec::units::wavenumber(1406.18);
  p.equilibrium_distance = 3.0148;
  p.reduced_mass = 1618.09;
  return p;
}

inline icec::MorseParams lih_plus() {
  icec::MorseParams p;
  p.dissociation_energy = icec::units::eV(0.14374);
  p.harmonic_frequency = icec::units::wavenumber(442.9);
  p.equilibrium_distance = 4.136;
  p.reduced_mass = 1618.09;
  return p;
}

inline const icec::RunConfig& preset() {
  static const icec::RunConfig cfg = icec::load_preset("h_plus_lih");
  return cfg;
}

// H+ + LiH with the default 8 A box, built once per test binary.
inline const icec::IcecEngine& preset_engine() {
  static const icec::IcecEngine engine(preset().engine);
  return engine;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("icec_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace testing
