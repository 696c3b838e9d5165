#pragma once

// Outgoing-electron spectra at fixed incoming energy.

#include "icec/engine.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace icec {

inline constexpr double default_lorentz_half_width_eV = 0.08; // 2 gamma = 0.16 eV

struct Stick {
  ChannelSpec channel;
  double eps_out = 0.0;
  double sigma = 0.0; // bohr^2, thermal weight already applied
  // Folded contributions are suppressed below the donor dissociation
  // threshold (eps' at E_{D+} = 0) when one exists.
  std::optional<double> cutoff;
  std::string label;
};

struct DensityPoint {
  double eps_out = 0.0;
  double value = 0.0;   // bohr^2 / Hartree
  double width = 0.0;   // clipped energy cell, Hartree
  double fragment_energy = 0.0; // kinetic energy release of the dissociating fragment
};

// One continuous piece of dsigma/deps', e.g. all D+ continuum states reached
// with A in a given final level. Points ascend in eps'.
struct DensityComponent {
  std::string label;
  InitialState initial;
  Contribution::Class cls = Contribution::Class::bound_dissociative;
  std::vector<DensityPoint> points;

  double integral() const;
  // Linear interpolation between points; zero outside their span.
  double sample(double eps_out) const;
};

struct Spectrum {
  double epsilon_in = 0.0;
  std::optional<double> temperature;
  std::vector<Stick> sticks;
  std::vector<DensityComponent> density;

  double stick_sum() const;
  double density_integral() const;
  double density_at(double eps_out) const;
  std::vector<double> density_on(std::span<const double> grid) const;
  // Largest eps' reached by any open channel.
  double max_eps_out() const;
};

Spectrum electron_spectrum(const IcecEngine& engine, double eps, const InitialState& init);

// Boltzmann superposition over initial levels (same truncation as thermal_xs).
Spectrum thermal_spectrum(const IcecEngine& engine, double eps, double temperature);

// sum_i sigma_i (gamma/pi) / ((x - x_i)^2 + gamma^2) H(x - cutoff_i)
std::vector<double> lorentz_fold(std::span<const Stick> sticks, double gamma, std::span<const double> grid);

// Uniform grid on [0, max eps' + 10 gamma].
std::vector<double> spectrum_grid(const Spectrum& s, double gamma, std::size_t points = 2000);

struct Peak {
  std::size_t index = 0;
  double position = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

// Strict local maxima whose topographic prominence is at least
// `floor_fraction` times the global maximum of y.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y, double floor_fraction);

std::string channel_label(const ChannelSpec& spec);

// Columns eps_out_eV, sticks_Mb, density_Mb_per_eV, folded_Mb_per_eV; sticks
// are binned to the nearest grid point. `header` lines are written as `#`
// comments first.
void write_spectrum_csv(std::ostream& os, const Spectrum& s, double gamma, std::size_t points,
                        std::span<const std::string> header);

// Channel provenance sidecar.
nlohmann::json spectrum_sidecar(const Spectrum& s, double gamma);

} // namespace icec
