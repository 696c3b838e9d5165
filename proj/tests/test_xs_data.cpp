#include "common.hpp"

#include "icec/error.hpp"
#include "icec/franck_condon.hpp"
#include "icec/xs_data.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace icec;
using units::eV;
using units::megabarn;
using units::to_megabarn;

namespace {

CrossSectionTable two_row() {
  std::istringstream in("energy_eV,sigma_Mb\n14.0,7.0\n15.0,7.3\n");
  return load_table(in, "two_row.csv");
}

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    load_table(in, "t.csv");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("table loading") {
  const auto t = two_row();
  CHECK(t.energies().size() == 2);
  CHECK(error_of("energy_eV,sigma_Mb\n15.0,7.0\n14.0,7.3\n").find("row 2") != std::string::npos);
  CHECK(error_of("energy_eV,sigma_Mb\n14.0,7.0\n15.0,-7.3\n").find("negative") != std::string::npos);
  CHECK(error_of("energy_eV,sigma_Mb\n14.0,7.0\n").find("two rows") != std::string::npos);
  const auto msg = error_of("# comment\nenergy_eV,sigma_Mb\n14.0,7.0\n\n15.0,x\n");
  CHECK(msg.find("t.csv:5") != std::string::npos);
  CHECK(error_of("e,s\n14.0,7.0\n15.0,7.1\n").find("header") != std::string::npos);
}

TEST_CASE("interpolation") {
  const auto t = two_row();
  CHECK(to_megabarn(t.interpolate(eV(14.0))) == doctest::Approx(7.0).epsilon(1e-13));
  CHECK(t.interpolate(t.energies()[1]) == t.values()[1]);
  CHECK(to_megabarn(t.interpolate(eV(14.5))) == doctest::Approx(7.15).epsilon(1e-12));
  CHECK_THROWS_AS(t.interpolate(eV(13.9)), RangeError);
  try {
    t.interpolate(eV(15.5));
  } catch (const RangeError& e) {
    CHECK(e.table_label() == "two_row.csv");
  }
}

TEST_CASE("constant table") {
  const auto t = CrossSectionTable::constant(eV(14.6), megabarn(5.23), eV(13.6), eV(30.0), "H");
  CHECK(t.is_constant());
  CHECK(to_megabarn(t.interpolate(eV(20.0))) == doctest::Approx(5.23));
  CHECK_THROWS_AS(t.interpolate(eV(13.5)), RangeError);
  CHECK_THROWS_AS(CrossSectionTable::constant(eV(40.0), 1.0, eV(13.6), eV(30.0), "bad"), InputError);
}

TEST_CASE("detailed balance anchor for hydrogen") {
  // omega^2 / (2 eps c^2) g sigma_PI with literal constants
  const double ha = 27.211386245988;
  const double mb = 0.529177210903 * 0.529177210903 * 100.0;
  const double omega = 14.6 / ha, eps = 1.0 / ha, c = 137.035999084;
  const double expected_mb = omega * omega / (2.0 * eps * c * c) * 2.0 * (5.23 / mb) * mb;
  const double got = to_megabarn(pr_from_pi(megabarn(5.23), omega, eps, 2.0));
  CHECK(got == doctest::Approx(expected_mb).epsilon(1e-12));
  CHECK(got == doctest::Approx(2.18e-3).epsilon(0.01));
}

TEST_CASE("detailed balance scaling") {
  const double s = 0.2, w = 0.5, e = 0.04;
  const double base = pr_from_pi(s, w, e, 2.0);
  CHECK(pr_from_pi(s, w, e, 4.0) == 2.0 * base);
  CHECK(pr_from_pi(0.0, w, e, 2.0) == 0.0);
  CHECK(pr_from_pi(3.0 * s, w, e, 2.0) == doctest::Approx(3.0 * base).epsilon(1e-15));
  CHECK(pr_from_pi(s, 2.0 * w, e, 2.0) == doctest::Approx(4.0 * base).epsilon(1e-15));
  CHECK(pr_from_pi(s, w, 2.0 * e, 2.0) == doctest::Approx(0.5 * base).epsilon(1e-15));
  CHECK_THROWS_AS(pr_from_pi(s, w, 0.0, 2.0), InputError);
}

TEST_CASE("branching ratios") {
  const auto partial = CrossSectionTable::tabulated({eV(10.0), eV(20.0)}, {megabarn(10.0), megabarn(10.0)}, "p");
  std::map<int, CrossSectionTable> br;
  br.emplace(0, CrossSectionTable::tabulated({eV(5.0), eV(25.0)}, {0.6, 0.6}, "br0"));
  br.emplace(1, CrossSectionTable::tabulated({eV(5.0), eV(25.0)}, {0.4, 0.4}, "br1"));
  const auto set = resolve_branching_ratios(partial, 0, br);
  CHECK(to_megabarn(set.at({0, 0}).interpolate(eV(15.0))) == doctest::Approx(6.0));
  CHECK(to_megabarn(set.at({0, 1}).interpolate(eV(15.0))) == doctest::Approx(4.0));

  br.erase(1);
  CHECK_THROWS_AS(resolve_branching_ratios(partial, 0, br), InputError);
}

TEST_CASE("v-ratios") {
  const auto partial = CrossSectionTable::tabulated({eV(10.0), eV(20.0)}, {megabarn(8.0), megabarn(8.0)}, "p");
  const std::vector<int> levels{0, 1};
  const std::vector<VRatio> ratios{{1, 0, CrossSectionTable::tabulated({eV(5.0), eV(25.0)}, {3.0, 3.0}, "r")}};
  const auto set = resolve_v_ratios(partial, 0, levels, ratios);
  CHECK(to_megabarn(set.at({0, 0}).interpolate(eV(12.0))) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(to_megabarn(set.at({0, 1}).interpolate(eV(12.0))) == doctest::Approx(6.0).epsilon(1e-12));

  // Sum over final levels reproduces the partial cross section.
  for (double w : partial.energies()) {
    double s = 0.0;
    for (const auto& [k, t] : set)
      s += t.interpolate(w);
    CHECK(std::abs(s - partial.interpolate(w)) <= 1e-6 * partial.interpolate(w));
  }

  const std::vector<int> three{0, 1, 2};
  CHECK_THROWS_AS(resolve_v_ratios(partial, 0, three, ratios), InputError);
}

TEST_CASE("Condon v-ratios reproduce Franck-Condon resolved tables") {
  const RadialGrid g;
  std::vector<double> fc;
  double bound_sum = 0.0;
  for (int f = 0; f < 5; ++f) {
    fc.push_back(fc_bound_bound(testing::lih(), testing::lih_plus(), 0, f, g));
    bound_sum += fc.back();
  }
  const auto partial = CrossSectionTable::tabulated({eV(8.0), eV(12.0), eV(20.0)},
                                                    {megabarn(7.0), megabarn(7.13), megabarn(6.5)}, "partial");
  std::vector<int> levels{0, 1, 2, 3, 4};
  std::vector<VRatio> ratios;
  for (int f = 1; f < 5; ++f)
    ratios.push_back({f, 0, CrossSectionTable::tabulated({eV(5.0), eV(30.0)}, {fc[f] / fc[0], fc[f] / fc[0]}, "r")});
  const auto set = resolve_v_ratios(partial, 0, levels, ratios);

  std::map<int, CrossSectionTable> br;
  for (int f = 0; f < 5; ++f)
    br.emplace(f, CrossSectionTable::tabulated({eV(5.0), eV(30.0)}, {fc[f] / bound_sum, fc[f] / bound_sum}, "br"));
  const auto via_br = resolve_branching_ratios(partial, 0, br);

  for (double w : partial.energies())
    for (int f = 0; f < 5; ++f) {
      const double expected = partial.interpolate(w) * fc[f] / bound_sum;
      CHECK(set.at({0, f}).interpolate(w) == doctest::Approx(expected).epsilon(1e-10));
      CHECK(via_br.at({0, f}).interpolate(w) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("resolved set directory") {
  const auto dir = testing::scratch_dir("resolved");
  std::ofstream(dir / "pi_nu0_nup0.csv") << "energy_eV,sigma_Mb\n5,1\n30,1\n";
  std::ofstream(dir / "pi_nu0_nup2.csv") << "energy_eV,sigma_Mb\n5,2\n30,2\n";
  std::ofstream(dir / "notes.txt") << "ignored\n";
  const auto set = load_resolved_set(dir);
  CHECK(set.size() == 2);
  CHECK(set.contains({0, 2}));
  CHECK(to_megabarn(set.at({0, 2}).interpolate(eV(10.0))) == doctest::Approx(2.0));
}
