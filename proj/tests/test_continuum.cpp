#include "common.hpp"

#include "icec/continuum_box.hpp"
#include "icec/error.hpp"
#include "icec/franck_condon.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace icec;
using testing::lih;
using testing::lih_plus;

namespace {

BoxSpec box_of(double r_max_angstrom, double e_max_eV, double r_min = 0.3) {
  BoxSpec b;
  b.r_min = r_min;
  b.r_max = units::angstrom(r_max_angstrom);
  // Keep the default step when the box grows.
  const double h = (units::angstrom(8.0) - 0.3) / 3999.0;
  b.n_grid = static_cast<std::size_t>(std::lround((b.r_max - b.r_min) / h)) + 1;
  b.e_max = units::eV(e_max_eV);
  return b;
}

MorseParams nearly_free() {
  MorseParams p = lih_plus();
  p.dissociation_energy = 1e-12;
  p.harmonic_frequency = 1e-13;
  return p;
}

} // namespace

TEST_CASE("free-particle limit") {
  const auto p = nearly_free();
  const RadialGrid g{0.3, units::angstrom(8.0), 4000};
  const double len = g.r_max - g.r_min;
  auto exact = [&](int n) { return n * n * std::numbers::pi * std::numbers::pi / (2.0 * p.reduced_mass * len * len); };
  const auto states = box_eigenstates(p, g, 0.0, exact(20) * 1.01);
  REQUIRE(states.size() == 20);
  for (int n = 1; n <= 20; ++n)
    CHECK(std::abs(states[n - 1].energy - exact(n)) / exact(n) < 1e-3);
}

TEST_CASE("LiH+ box states are positive and orthogonal") {
  const auto set = box_states(lih_plus(), box_of(8.0, 17.6, 0.5));
  const auto r = set.grid.points();
  REQUIRE(set.states.size() > 10);
  double worst = 0.0;
  for (std::size_t i = 0; i < set.states.size(); ++i) {
    CHECK(set.states[i].energy > 0.0);
    CHECK(trapezoid_product(r, set.states[i].wavefunction, set.states[i].wavefunction) ==
          doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 0; j < i; ++j)
      worst = std::max(worst, std::abs(trapezoid_product(r, set.states[i].wavefunction, set.states[j].wavefunction)));
  }
  CHECK(worst < 1e-4);
}

namespace {

// Semiclassical count of all states (bound included) below e in a box ending
// at r_max: (1/pi) * integral of sqrt(2 mu (e - V)) over the allowed region.
double wkb_count(const MorseParams& p, double e, double r_max) {
  const int n = 200000;
  double s = 0.0;
  const double h = r_max / n;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double t = e - potential_value(p, r);
    if (t > 0.0)
      s += std::sqrt(2.0 * p.reduced_mass * t) * h;
  }
  return s / std::numbers::pi;
}

} // namespace

TEST_CASE("state count grows linearly with the box") {
  const double e = units::eV(6.0);
  auto count = [&](double r_max_angstrom) {
    return static_cast<long>(box_states(lih_plus(), box_of(r_max_angstrom, 6.0)).states.size());
  };
  const auto n8 = count(8.0), n12 = count(12.0), n16 = count(16.0);
  MESSAGE("states below 6 eV: " << n8 << " / " << n12 << " / " << n16 << " at 8 / 12 / 16 A");
  // Linear in the box length.
  CHECK(std::abs((n16 - n12) - (n12 - n8)) <= 2);
  // Doubling r_max doubles the count up to the constant set by the inner
  // wall; the semiclassical count carries the same offset.
  const auto bound = static_cast<double>(bound_spectrum(lih_plus()).size());
  const double w8 = wkb_count(lih_plus(), e, units::angstrom(8.0)) - bound;
  const double w16 = wkb_count(lih_plus(), e, units::angstrom(16.0)) - bound;
  CHECK(std::abs(static_cast<double>(n8) - w8) <= 2.0);
  CHECK(std::abs(static_cast<double>(n16) - w16) <= 2.0);
  CHECK(std::abs(static_cast<double>(n16 - 2 * n8) - (w16 - 2.0 * w8)) <= 2.0);
}

TEST_CASE("density of states definition") {
  std::vector<ContinuumState> s(2);
  s[0].energy = units::eV(1.0);
  s[1].energy = units::eV(1.5);
  CHECK(density_of_states(s, 0) / units::hartree_in_eV == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(density_of_states(s, 1) / units::hartree_in_eV == doctest::Approx(2.0).epsilon(1e-12));

  const auto set = box_states(nearly_free(), box_of(8.0, 2.0));
  for (std::size_t i = 0; i + 1 < set.states.size(); ++i)
    CHECK(set.states[i].dos * (set.states[i + 1].energy - set.states[i].energy) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("LiH+ density of states decreases with energy") {
  const auto set = box_states(lih_plus(), box_of(8.0, 17.6));
  for (std::size_t i = 0; i + 2 < set.states.size(); ++i)
    CHECK(set.states[i + 1].dos < set.states[i].dos);
}

TEST_CASE("box solver reproduces the analytic bound levels") {
  SUBCASE("LiH+ in a box that holds every level") {
    const auto p = lih_plus();
    const RadialGrid g{0.3, 40.0, 10000};
    const auto fd = box_eigenstates(p, g, -p.dissociation_energy, 0.0);
    const auto exact = bound_spectrum(p);
    REQUIRE(fd.size() == exact.size());
    for (std::size_t i = 0; i < fd.size(); ++i)
      CHECK(std::abs(units::to_eV(fd[i].energy - exact[i].energy)) < 1e-4);
  }
  SUBCASE("LiH+ on the default box, levels the box holds") {
    const auto p = lih_plus();
    const auto g = box_of(8.0, 1.0).grid();
    const auto fd = box_eigenstates(p, g, -p.dissociation_energy, 0.0);
    const auto exact = bound_spectrum(p);
    const auto r = g.points();
    for (std::size_t i = 0; i < exact.size() && bound_wavefunction(p, exact[i].nu, r).well_resolved; ++i)
      CHECK(std::abs(units::to_eV(fd[i].energy - exact[i].energy)) < 1e-4);
  }
  SUBCASE("LiH at doubled grid density") {
    const auto p = lih();
    const RadialGrid g{0.3, 16.0, 8000};
    const auto fd = box_eigenstates(p, g, -p.dissociation_energy, 0.0);
    const auto exact = bound_spectrum(p);
    const auto r = g.points();
    for (std::size_t i = 0; i < exact.size() && bound_wavefunction(p, exact[i].nu, r).well_resolved; ++i)
      CHECK(std::abs(units::to_eV(fd[i].energy - exact[i].energy)) < 1e-4);
  }
}

TEST_CASE("box convergence between 8 and 12 A") {
  const auto small = box_states(lih_plus(), box_of(8.0, 17.6));
  const auto large = box_states(lih_plus(), box_of(12.0, 17.6));
  const auto a = fc_table(lih(), lih_plus(), small, 0);
  const auto b = fc_table(lih(), lih_plus(), large, 0);
  CHECK(std::abs(a.continuum.integral() - b.continuum.integral()) / b.continuum.integral() < 1e-2);
  CHECK(std::abs(a.sum_rule - b.sum_rule) < 1e-3);
  // Integral up to 2 eV of fragment energy.
  CHECK(std::abs(a.continuum.integral(units::eV(2.0)) - b.continuum.integral(units::eV(2.0))) /
            b.continuum.integral(units::eV(2.0)) <
        1e-2);
}

TEST_CASE("box validation") {
  BoxSpec b = box_of(8.0, 1.0);
  b.n_grid = 100;
  CHECK_THROWS_AS(b.validate(), InputError);
  // Window below the first continuum state.
  CHECK_THROWS_AS(box_states(lih_plus(), box_of(8.0, 1e-6)), InputError);
}
