#include "icec/commands.hpp"

#include "icec/error.hpp"
#include "icec/spectrum.hpp"
#include "icec/units.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace icec {

namespace fs = std::filesystem;

std::string output_header(const RunConfig& cfg, const std::string& what) {
  return fmt::format("# icec {} {} config_hash={}", ICEC_VERSION, what, cfg.hash);
}

std::string temperature_tag(double kelvin) { return fmt::format("T{:g}K", kelvin); }

namespace {

std::ostream& log_stream(const CommandOptions& opt) { return opt.log ? *opt.log : std::cerr; }
std::ostream& report_stream(const CommandOptions& opt) { return opt.report ? *opt.report : std::cout; }

fs::path output_dir(const RunConfig& cfg, const CommandOptions& opt) {
  const fs::path dir = opt.out_dir.empty() ? cfg.output_directory : opt.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError(fmt::format("cannot write {}", path.string()));
  out << content;
}

std::string num(double x) {
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.10e}", x);
}

struct TotalRow {
  bool ok = false;
  std::string line;
  std::string warning;
};

TotalRow total_row(const IcecEngine& engine, double eps_eV, std::optional<double> temperature) {
  const double eps = units::eV(eps_eV);
  TotalRow row;
  try {
    TotalXs xs;
    if (temperature) {
      for (const auto& w : engine.thermal_weights(*temperature)) {
        const auto t = engine.total_xs(eps, w.state);
        xs.bound_bound += w.weight * t.bound_bound;
        xs.bound_dissociative += w.weight * t.bound_dissociative;
        xs.dissociative_bound += w.weight * t.dissociative_bound;
        xs.double_dissociative += w.weight * t.double_dissociative;
      }
    } else {
      xs = engine.total_xs(eps, {0, 0});
    }
    const double mb = units::bohr2_in_megabarn;
    row.line = fmt::format("{:.6f},{},{},{},{},{}\n", eps_eV, num(engine.electronic_xs(eps) * mb),
                           num(xs.bound_bound * mb), num(xs.dissociative() * mb), num(xs.total() * mb),
                           num(engine.pr_cross_section(eps) * mb));
    row.ok = true;
  } catch (const RangeError& e) {
    row.warning = fmt::format("warning: eps = {:g} eV omitted, outside table '{}': {}", eps_eV, e.table_label(),
                              e.what());
  }
  return row;
}

} // namespace

std::vector<fs::path> cmd_total(const RunConfig& cfg, const CommandOptions& opt) {
  const IcecEngine engine(cfg.engine);
  const auto dir = output_dir(cfg, opt);
  const auto grid = cfg.run.eps_grid_eV();

  std::vector<std::optional<double>> temps;
  for (double t : cfg.run.temperatures_K)
    temps.emplace_back(t);
  if (temps.empty())
    temps.emplace_back(std::nullopt);

  std::vector<fs::path> written;
  for (const auto& t : temps) {
    const auto rows = parallel_map<TotalRow>(grid.size(), opt.threads,
                                             [&](std::size_t i) { return total_row(engine, grid[i], t); });
    std::string out = output_header(cfg, "total") + "\n";
    if (t)
      out += fmt::format("# temperature_K={:g}\n", *t);
    out += "eps_eV,sigma_electronic_Mb,sigma_bb_Mb,sigma_bd_Mb,sigma_total_Mb,sigma_pr_Mb\n";
    for (const auto& r : rows) {
      if (r.ok)
        out += r.line;
      else
        log_stream(opt) << r.warning << '\n';
    }
    const auto path = dir / (t ? fmt::format("total_{}.csv", temperature_tag(*t)) : std::string("total.csv"));
    write_file(path, out);
    written.push_back(path);
  }
  return written;
}

std::vector<fs::path> cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt) {
  const IcecEngine engine(cfg.engine);
  const auto dir = output_dir(cfg, opt);
  const double eps = units::eV(cfg.run.spectrum_eps_eV);
  const double gamma = units::eV(cfg.run.lorentz_half_width_eV);

  std::vector<std::optional<double>> temps;
  for (double t : cfg.run.temperatures_K)
    temps.emplace_back(t);
  if (temps.empty())
    temps.emplace_back(std::nullopt);

  struct Files {
    std::string csv, json;
  };
  const auto results = parallel_map<Files>(temps.size(), opt.threads, [&](std::size_t i) {
    const auto& t = temps[i];
    const Spectrum s = t ? thermal_spectrum(engine, eps, *t) : electron_spectrum(engine, eps, {0, 0});
    std::vector<std::string> header{output_header(cfg, "spectrum").substr(2),
                                    fmt::format("eps_eV={:g}", cfg.run.spectrum_eps_eV)};
    if (t)
      header.push_back(fmt::format("temperature_K={:g}", *t));
    std::ostringstream csv;
    write_spectrum_csv(csv, s, gamma, cfg.run.spectrum_points, header);
    auto side = spectrum_sidecar(s, gamma);
    side["artifact_version"] = ICEC_VERSION;
    side["config_hash"] = cfg.hash;
    return Files{csv.str(), side.dump(2) + "\n"};
  });

  std::vector<fs::path> written;
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const std::string stem =
        temps[i] ? fmt::format("spectrum_{}", temperature_tag(*temps[i])) : std::string("spectrum");
    write_file(dir / (stem + ".csv"), results[i].csv);
    write_file(dir / (stem + ".json"), results[i].json);
    written.push_back(dir / (stem + ".csv"));
    written.push_back(dir / (stem + ".json"));
  }
  return written;
}

// ---------------------------------------------------------------- validate

namespace {

ValidationCheck check(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

std::vector<ValidationCheck> curve_checks(const std::string& name, const SpeciesSpec& spec, const SpeciesModel& model,
                                          const BoxSpec& box) {
  std::vector<ValidationCheck> out;
  const auto& initial = *spec.initial_curve;
  const auto& final_curve = *spec.final_curve;

  // Level ladders: strictly increasing inside the well.
  double ladder_defects = 0;
  for (const auto* levels : {&model.initial_levels, &model.final_levels}) {
    const auto& p = levels == &model.initial_levels ? initial : final_curve;
    for (std::size_t i = 0; i < levels->size(); ++i) {
      const double e = (*levels)[i].energy;
      if (!(e > -p.dissociation_energy && e < 0.0) || (i > 0 && !(e > (*levels)[i - 1].energy)))
        ++ladder_defects;
    }
  }
  out.push_back(check(name + " bound levels", ladder_defects, 0.0,
                      fmt::format("{} initial, {} final", model.initial_levels.size(), model.final_levels.size())));

  // Orthonormality and nodes for the levels the box grid resolves.
  const auto r = box.grid().points();
  std::vector<SampledWavefunction> waves;
  for (const auto& l : model.initial_levels) {
    auto w = bound_wavefunction(initial, l.nu, r);
    if (!w.well_resolved)
      break;
    waves.push_back(std::move(w));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < waves.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double s = trapezoid_product(r, waves[i].values, waves[j].values);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  out.push_back(check(name + " orthonormality", worst, 1e-5,
                      fmt::format("{} of {} levels resolved on the box grid", waves.size(),
                                  model.initial_levels.size())));
  double node_mismatch = 0;
  for (std::size_t i = 0; i < waves.size(); ++i)
    if (count_nodes(waves[i].values) != static_cast<int>(i))
      ++node_mismatch;
  out.push_back(check(name + " node counts", node_mismatch, 0.0));

  // Box solver bound levels against the analytic ladder of the same curve.
  {
    const auto fd = box_eigenstates(final_curve, box.grid(), -final_curve.dissociation_energy, 0.0);
    double dev = 0.0;
    std::size_t compared = 0;
    for (const auto& l : model.final_levels) {
      if (!bound_wavefunction(final_curve, l.nu, r).well_resolved)
        break;
      if (static_cast<std::size_t>(l.nu) >= fd.size()) {
        dev = std::numeric_limits<double>::infinity();
        break;
      }
      dev = std::max(dev, std::abs(units::to_eV(fd[static_cast<std::size_t>(l.nu)].energy - l.energy)));
      ++compared;
    }
    out.push_back(check(name + " box vs analytic levels [eV]", dev, 1e-4,
                        fmt::format("{} of {} levels resolved on the box grid", compared, model.final_levels.size())));
  }

  // Completeness for the lowest three levels.
  for (int nu = 0; nu < std::min<int>(3, static_cast<int>(model.initial_levels.size())); ++nu) {
    const double s = model.fc.at(nu).sum_rule;
    out.push_back(check(fmt::format("{} sum rule nu={}", name, nu), std::abs(s - 1.0), 1e-3,
                        fmt::format("sum = {:.6f}", s)));
  }

  // Box convergence: enlarge the box by half at fixed grid step.
  BoxSpec big = box;
  big.r_max = box.r_min + 1.5 * (box.r_max - box.r_min);
  big.n_grid = static_cast<std::size_t>(std::lround(1.5 * static_cast<double>(box.n_grid - 1))) + 1;
  const auto big_set = box_states(final_curve, big);
  const auto big_fc = fc_table(initial, final_curve, big_set, 0);
  const double base = model.fc.at(0).continuum.integral();
  const double enlarged = big_fc.continuum.integral();
  const double rel = std::abs(base - enlarged) / std::max(std::abs(enlarged), 1e-300);
  out.push_back(check(name + " box convergence (nu=0 continuum)", rel, 1e-2,
                      fmt::format("{:.6f} vs {:.6f} at r_max x1.5", base, enlarged)));
  return out;
}

double working_eps(const RunConfig& cfg) {
  if (cfg.run.spectrum_eps_eV > 0.0)
    return units::eV(cfg.run.spectrum_eps_eV);
  if (cfg.run.eps_min_eV > 0.0)
    return units::eV(cfg.run.eps_min_eV);
  return units::eV(1.0);
}

std::vector<ValidationCheck> energy_checks(const IcecEngine& engine, const RunConfig& cfg) {
  const InitialState init{0, 0};
  const auto channels = engine.enumerate_channels(init);
  double closure = 0.0, forms = 0.0;
  for (double eps_eV : {cfg.run.eps_min_eV, cfg.run.spectrum_eps_eV, cfg.run.eps_max_eV}) {
    const double eps = units::eV(eps_eV);
    for (const auto& c : channels) {
      closure = std::max(closure, std::abs(units::to_eV(engine.energy_balance_residual(eps, c))));
      const double w1 = engine.transferred_energy(eps, c.initial.nu_a, c.final_a);
      const double w2 = engine.transferred_energy_asymptotic(eps, c.initial.nu_a, c.final_a);
      const double o1 = engine.outgoing_energy(w1, c.initial.nu_d, c.final_d);
      const double o2 = engine.outgoing_energy_asymptotic(w1, c.initial.nu_d, c.final_d);
      forms = std::max({forms, std::abs(units::to_eV(w1 - w2)), std::abs(units::to_eV(o1 - o2))});
    }
  }
  std::vector<ValidationCheck> out;
  out.push_back(check("energy closure [eV]", closure, 1e-12, fmt::format("{} channels", channels.size())));
  out.push_back(check("adiabatic vs asymptotic energy forms [eV]", forms, 1e-12));

  const double eps = working_eps(cfg);
  const auto s = electron_spectrum(engine, eps, init);
  const double total = engine.total_xs(eps, init).total();
  const double parts = s.stick_sum() + s.density_integral();
  out.push_back(check("spectrum decomposition", std::abs(parts - total) / total, 1e-9,
                      fmt::format("eps = {:g} eV", units::to_eV(eps))));
  return out;
}

} // namespace

std::vector<ValidationCheck> run_validation(const RunConfig& cfg, unsigned threads) {
  const IcecEngine engine(cfg.engine);
  std::vector<std::function<std::vector<ValidationCheck>()>> tasks;
  for (const auto* spec : {&cfg.engine.acceptor, &cfg.engine.donor}) {
    if (spec->kind != SpeciesKind::diatomic)
      continue;
    const auto& model = spec == &cfg.engine.acceptor ? engine.acceptor() : engine.donor();
    tasks.emplace_back([&, spec] { return curve_checks(spec->name, *spec, model, cfg.engine.box); });
  }
  tasks.emplace_back([&] { return energy_checks(engine, cfg); });
  const auto parts = parallel_map<std::vector<ValidationCheck>>(tasks.size(), threads,
                                                                [&](std::size_t i) { return tasks[i](); });
  std::vector<ValidationCheck> out;
  for (const auto& p : parts)
    out.insert(out.end(), p.begin(), p.end());
  return out;
}

int cmd_validate(const RunConfig& cfg, const CommandOptions& opt) {
  const auto checks = run_validation(cfg, opt.threads);
  auto& os = report_stream(opt);
  os << output_header(cfg, "validate") << '\n';
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    fmt::print(os, "{} {:<48} measured={:.3e} tolerance={:.1e}{}\n", c.pass ? "PASS" : "FAIL", c.name, c.measured,
               c.tolerance, c.detail.empty() ? "" : "  (" + c.detail + ")");
  }
  fmt::print(os, "{}: {} checks\n", all ? "ALL PASS" : "FAILURES", checks.size());
  return all ? 0 : 1;
}

} // namespace icec
