#include "common.hpp"

#include "icec/spectrum.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace icec;
using testing::preset_engine;
using units::eV;
using units::to_eV;

namespace {

std::vector<double> bound_dissociative_density(const Spectrum& s, std::span<const double> grid) {
  std::vector<double> out(grid.size(), 0.0);
  for (const auto& c : s.density)
    if (c.cls == Contribution::Class::bound_dissociative)
      for (std::size_t i = 0; i < grid.size(); ++i)
        out[i] += c.sample(grid[i]);
  return out;
}

std::vector<double> uniform(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

const Spectrum& ground_spectrum() {
  static const Spectrum s = electron_spectrum(preset_engine(), eV(1.0), {0, 0});
  return s;
}

} // namespace

TEST_CASE("default Lorentz width") { CHECK(2.0 * default_lorentz_half_width_eV == doctest::Approx(0.16)); }

TEST_CASE("sticks move down with the cation level") {
  const auto& s = ground_spectrum();
  std::vector<std::pair<int, double>> bb;
  for (const auto& st : s.sticks) {
    CHECK(st.eps_out > 0.0);
    CHECK(st.cutoff.has_value());
    if (st.channel.final_a.index == 0 && st.channel.final_d.is_bound())
      bb.emplace_back(st.channel.final_d.index, st.eps_out);
  }
  REQUIRE(bb.size() == 5);
  std::sort(bb.begin(), bb.end());
  for (std::size_t i = 1; i < bb.size(); ++i)
    CHECK(bb[i].second < bb[i - 1].second);
  CHECK(to_eV(bb[0].second) == doctest::Approx(14.6 - to_eV(preset_engine().adiabatic_ip_donor())).epsilon(1e-12));
}

TEST_CASE("bound-dissociative maximum and fragment energy") {
  const auto& s = ground_spectrum();
  const DensityPoint* best = nullptr;
  for (const auto& c : s.density)
    for (const auto& p : c.points)
      if (!best || p.value > best->value)
        best = &p;
  REQUIRE(best);
  MESSAGE("maximum at " << to_eV(best->eps_out) << " eV, fragment " << to_eV(best->fragment_energy) << " eV");
  CHECK(std::abs(to_eV(best->eps_out) - 6.67) <= 0.15);
  CHECK(std::abs(to_eV(best->fragment_energy) - 0.13) <= 0.05);
}

TEST_CASE("spectrum decomposes the total cross section") {
  const auto& e = preset_engine();
  for (double eps_eV : {0.3, 1.0, 3.0})
    for (int nu : {0, 2}) {
      const auto s = electron_spectrum(e, eV(eps_eV), {0, nu});
      const double total = e.total_xs(eV(eps_eV), {0, nu}).total();
      CHECK(std::abs(s.stick_sum() + s.density_integral() - total) <= 1e-6 * total);
    }
  const auto th = thermal_spectrum(e, eV(1.0), 1500.0);
  const double total = e.thermal_xs(eV(1.0), 1500.0);
  CHECK(std::abs(th.stick_sum() + th.density_integral() - total) <= 1e-6 * total);
}

TEST_CASE("density support") {
  const auto& s = ground_spectrum();
  const double top = s.max_eps_out();
  for (const auto& c : s.density)
    for (const auto& p : c.points) {
      CHECK(p.eps_out > 0.0);
      CHECK(p.eps_out <= top);
      CHECK(p.value >= 0.0);
    }
  CHECK(s.density_at(top + eV(0.01)) == 0.0);
  CHECK(s.density_at(0.0) == 0.0);
  CHECK(s.density_at(-eV(1.0)) == 0.0);
}

TEST_CASE("reflection-principle peak counts") {
  const auto grid = uniform(0.0, eV(8.0), 4000);
  for (int nu : {0, 1, 2}) {
    const auto s = electron_spectrum(preset_engine(), eV(1.0), {0, nu});
    const auto d = bound_dissociative_density(s, grid);
    const auto peaks = find_peaks(grid, d, 0.01);
    CHECK(peaks.size() == static_cast<std::size_t>(nu + 1));
  }
}

TEST_CASE("Lorentz folding") {
  Stick st;
  st.eps_out = eV(3.0);
  st.sigma = 2.0;
  const double gamma = eV(0.08);
  const std::vector<Stick> sticks{st};
  const std::vector<double> at{st.eps_out};
  CHECK(lorentz_fold(sticks, gamma, at)[0] == doctest::Approx(st.sigma / (std::numbers::pi * gamma)).epsilon(1e-14));

  const auto g = uniform(st.eps_out - 50 * gamma, st.eps_out + 50 * gamma, 20001);
  const auto f = lorentz_fold(sticks, gamma, g);
  CHECK(trapezoid(g, f) == doctest::Approx(st.sigma).epsilon(0.02));

  std::vector<Stick> cut{st};
  cut[0].cutoff = eV(2.9);
  const std::vector<double> probe{eV(2.85), eV(2.95)};
  const auto fc = lorentz_fold(cut, gamma, probe);
  CHECK(fc[0] == 0.0);
  CHECK(fc[1] > 0.0);
}

TEST_CASE("peak finder") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<double> y{0, 1, 0, 5, 4, 4.5, 0, 0.001, 0};
  const auto all = find_peaks(x, y, 0.0);
  CHECK(all.size() == 4);
  const auto big = find_peaks(x, y, 0.05);
  REQUIRE(big.size() == 3);
  CHECK(big[1].position == 3.0);
  CHECK(big[1].prominence == doctest::Approx(5.0));
  CHECK(big[2].prominence == doctest::Approx(0.5));
  // Plateaus are not strict maxima.
  const std::vector<double> flat{0, 1, 1, 0};
  CHECK(find_peaks(std::vector<double>{0, 1, 2, 3}, flat, 0.0).empty());
}

TEST_CASE("thermal spectra") {
  const auto& e = preset_engine();
  const double eps = eV(1.0);
  const auto g = uniform(0.0, eV(8.0), 4000);
  const auto s0 = thermal_spectrum(e, eps, 0.0);
  const auto& ground = ground_spectrum();
  CHECK(s0.stick_sum() == ground.stick_sum());
  CHECK(s0.density_on(g) == ground.density_on(g));

  const auto s15 = thermal_spectrum(e, eps, 15.0);
  const auto s300 = thermal_spectrum(e, eps, 300.0);
  const auto s1500 = thermal_spectrum(e, eps, 1500.0);
  const double gamma = eV(default_lorentz_half_width_eV);

  const auto d15 = bound_dissociative_density(s15, g);
  const auto d300 = bound_dissociative_density(s300, g);
  const double dmax = *std::max_element(d15.begin(), d15.end());
  const auto f15 = lorentz_fold(s15.sticks, gamma, g);
  const auto f300 = lorentz_fold(s300.sticks, gamma, g);
  const double fmax = *std::max_element(f15.begin(), f15.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(d300[i] - d15[i]) <= 0.01 * dmax);
    CHECK(std::abs(f300[i] - f15[i]) <= 0.01 * fmax);
  }

  // The feature near 6.95 eV only exists at 300 K.
  auto near_695 = [&](const std::vector<double>& d) {
    int n = 0;
    for (const auto& p : find_peaks(g, d, 1e-4))
      if (std::abs(to_eV(p.position) - 6.95) <= 0.2)
        ++n;
    return n;
  };
  CHECK(near_695(d300) == 1);
  CHECK(near_695(d15) == 0);

  const auto d1500 = bound_dissociative_density(s1500, g);
  const auto f1500 = lorentz_fold(s1500.sticks, gamma, g);
  CHECK(*std::max_element(d1500.begin(), d1500.end()) < *std::max_element(d300.begin(), d300.end()));
  CHECK(*std::max_element(f1500.begin(), f1500.end()) < *std::max_element(f300.begin(), f300.end()));
}

TEST_CASE("CSV and sidecar") {
  const auto& s = ground_spectrum();
  const double gamma = eV(0.08);
  std::ostringstream os;
  const std::vector<std::string> header{"icec test"};
  write_spectrum_csv(os, s, gamma, 500, header);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# icec test");
  std::getline(in, line);
  CHECK(line == "eps_out_eV,sticks_Mb,density_Mb_per_eV,folded_Mb_per_eV");
  int rows = 0;
  double stick_total = 0.0;
  while (std::getline(in, line)) {
    ++rows;
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    stick_total += std::stod(line.substr(a + 1, b - a - 1));
  }
  CHECK(rows == 500);
  CHECK(stick_total == doctest::Approx(units::to_megabarn(s.stick_sum())).epsilon(1e-8));

  const auto j = spectrum_sidecar(s, gamma);
  CHECK(j.at("sticks").size() == s.sticks.size());
  CHECK(j.at("lorentz_half_width_eV").get<double>() == doctest::Approx(0.08));
  CHECK(channel_label(s.sticks.front().channel) == "A:0->0 D:0->0");
}
