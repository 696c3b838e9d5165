#include "icec/engine.hpp"

#include "icec/error.hpp"
#include "icec/units.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace icec {

// ---------------------------------------------------------------- species

SpeciesSpec SpeciesSpec::atomic(std::string name, Role role, double ip, double g_ratio,
                                CrossSectionTable pi) {
  SpeciesSpec s;
  s.name = std::move(name);
  s.role = role;
  s.kind = SpeciesKind::atomic;
  s.ip_reference = ip;
  s.multiplicity_ratio = g_ratio;
  s.pi_table = std::move(pi);
  return s;
}

SpeciesSpec SpeciesSpec::diatomic(std::string name, Role role, double ip, double g_ratio,
                                  CrossSectionTable pi, MorseParams initial, MorseParams final_curve) {
  SpeciesSpec s;
  s.name = std::move(name);
  s.role = role;
  s.kind = SpeciesKind::diatomic;
  s.ip_reference = ip;
  s.multiplicity_ratio = g_ratio;
  s.pi_table = std::move(pi);
  // Minimum-to-minimum gap: donor  (V+ - D+) - (V - D) = IP_D,
  //                          acceptor (V - D) - (V- - D-) = IP_{A-}.
  const double sign = role == Role::donor ? 1.0 : -1.0;
  initial.asymptote = 0.0;
  final_curve.asymptote = sign * ip + final_curve.dissociation_energy - initial.dissociation_energy;
  s.initial_curve = initial;
  s.final_curve = final_curve;
  return s;
}

double SpeciesSpec::asymptote_gap() const {
  if (kind == SpeciesKind::atomic)
    return role == Role::donor ? ip_reference : -ip_reference;
  return final_curve->asymptote - initial_curve->asymptote;
}

void SpeciesSpec::validate() const {
  if (!(ip_reference > 0.0))
    throw InputError(fmt::format("species {}: ionization reference must be positive", name));
  if (!(multiplicity_ratio > 0.0))
    throw InputError(fmt::format("species {}: multiplicity ratio must be positive", name));
  if (pi_table.energies().empty())
    throw InputError(fmt::format("species {}: missing photoionization table", name));
  if (kind == SpeciesKind::atomic) {
    if (initial_curve || final_curve)
      throw InputError(fmt::format("species {}: an atomic species carries no potential curves", name));
  } else {
    if (!initial_curve || !final_curve)
      throw InputError(fmt::format("species {}: a diatomic species needs both potential curves", name));
    initial_curve->validate();
    final_curve->validate();
  }
}

void EngineConfig::validate() const {
  if (acceptor.role != Role::acceptor || donor.role != Role::donor)
    throw InputError("engine config: acceptor/donor roles swapped");
  acceptor.validate();
  donor.validate();
  if (!(r_ad > 0.0))
    throw InputError("engine config: R_AD must be positive");
  if (acceptor.kind == SpeciesKind::diatomic || donor.kind == SpeciesKind::diatomic)
    box.validate();
  if (mode == XsMode::ab_initio_resolved) {
    if (!donor.resolved || donor.resolved->empty())
      throw InputError("ab-initio-resolved mode requires vibrationally resolved donor PI tables");
    if (donor.kind != SpeciesKind::diatomic)
      throw InputError("ab-initio-resolved mode requires a diatomic donor");
  }
}

double SpeciesModel::initial_energy(int nu) const {
  if (nu < 0 || static_cast<std::size_t>(nu) >= initial_levels.size())
    throw InputError(fmt::format("initial vibrational level {} out of range", nu));
  return initial_levels[static_cast<std::size_t>(nu)].energy;
}

double SpeciesModel::final_energy(const FinalLevel& f) const {
  if (f.is_bound()) {
    if (f.index < 0 || static_cast<std::size_t>(f.index) >= final_levels.size())
      throw InputError(fmt::format("final vibrational level {} out of range", f.index));
    return final_levels[static_cast<std::size_t>(f.index)].energy;
  }
  if (f.index < 0 || static_cast<std::size_t>(f.index) >= continuum.states.size())
    throw InputError(fmt::format("continuum state {} out of range", f.index));
  return continuum.states[static_cast<std::size_t>(f.index)].energy;
}

double SpeciesModel::factor(int nu, const FinalLevel& f) const {
  const auto it = fc.find(nu);
  if (it == fc.end())
    throw InputError(fmt::format("no Franck-Condon data for initial level {}", nu));
  if (f.is_bound()) {
    const auto b = it->second.bound_factors.find(f.index);
    if (b == it->second.bound_factors.end())
      throw InputError(fmt::format("final vibrational level {} out of range", f.index));
    return b->second;
  }
  const auto& d = it->second.continuum.density;
  if (f.index < 0 || static_cast<std::size_t>(f.index) >= d.size())
    throw InputError(fmt::format("continuum state {} out of range", f.index));
  return d[static_cast<std::size_t>(f.index)];
}

namespace {

SpeciesModel build_model(const SpeciesSpec& s, const BoxSpec& box) {
  SpeciesModel m;
  m.kind = s.kind;
  m.gap = s.asymptote_gap();
  if (s.kind == SpeciesKind::atomic) {
    m.initial_levels = {{0, 0.0}};
    m.final_levels = {{0, 0.0}};
    FcTable t;
    t.initial_nu = 0;
    t.bound_factors[0] = 1.0;
    t.sum_rule = 1.0;
    m.fc.emplace(0, std::move(t));
    return m;
  }
  m.initial_levels = bound_spectrum(*s.initial_curve);
  m.final_levels = bound_spectrum(*s.final_curve);
  m.continuum = box_states(*s.final_curve, box);
  for (const auto& level : m.initial_levels)
    m.fc.emplace(level.nu, fc_table(*s.initial_curve, *s.final_curve, m.continuum, level.nu));
  return m;
}

bool is_open(double eps_out) { return eps_out > units::eV(IcecEngine::open_threshold_eV); }

} // namespace

// ---------------------------------------------------------------- engine

IcecEngine::IcecEngine(EngineConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  acceptor_ = build_model(cfg_.acceptor, cfg_.box);
  donor_ = build_model(cfg_.donor, cfg_.box);
  // IP^a_{A-} = (V_A + E_0A) - (V_A- + E_0A-),  IP^a_D = (V_D+ + E_0D+) - (V_D + E_0D)
  ipa_acceptor_ = acceptor_.initial_levels.front().energy - acceptor_.gap - acceptor_.final_levels.front().energy;
  ipa_donor_ = donor_.gap + donor_.final_levels.front().energy - donor_.initial_levels.front().energy;
}

double IcecEngine::vertical_ip_donor() const {
  const auto& d = cfg_.donor;
  if (d.kind == SpeciesKind::atomic)
    return d.ip_reference;
  const double re = d.initial_curve->equilibrium_distance;
  return (d.final_curve->asymptote + potential_value(*d.final_curve, re)) -
         (d.initial_curve->asymptote + potential_value(*d.initial_curve, re));
}

double IcecEngine::transferred_energy(double eps, int nu_a, const FinalLevel& final_a) const {
  const double e0 = acceptor_.initial_levels.front().energy;
  const double e0m = acceptor_.final_levels.front().energy;
  return eps + ipa_acceptor_ +
         ((acceptor_.initial_energy(nu_a) - e0) - (acceptor_.final_energy(final_a) - e0m));
}

double IcecEngine::transferred_energy_asymptotic(double eps, int nu_a, const FinalLevel& final_a) const {
  // V_A = 0 reference, V_A- = gap
  return eps + acceptor_.initial_energy(nu_a) - (acceptor_.gap + acceptor_.final_energy(final_a));
}

double IcecEngine::outgoing_energy(double omega, int nu_d, const FinalLevel& final_d) const {
  const double e0 = donor_.initial_levels.front().energy;
  const double e0p = donor_.final_levels.front().energy;
  return omega - ipa_donor_ - ((donor_.final_energy(final_d) - e0p) - (donor_.initial_energy(nu_d) - e0));
}

double IcecEngine::outgoing_energy_asymptotic(double omega, int nu_d, const FinalLevel& final_d) const {
  return omega + donor_.initial_energy(nu_d) - (donor_.gap + donor_.final_energy(final_d));
}

double IcecEngine::energy_balance_residual(double eps, const ChannelSpec& spec) const {
  const double omega = transferred_energy(eps, spec.initial.nu_a, spec.final_a);
  const double eps_out = outgoing_energy(omega, spec.initial.nu_d, spec.final_d);
  const double initial = acceptor_.initial_energy(spec.initial.nu_a) + donor_.initial_energy(spec.initial.nu_d);
  const double final = (acceptor_.gap + acceptor_.final_energy(spec.final_a)) +
                       (donor_.gap + donor_.final_energy(spec.final_d));
  return (eps + initial) - (eps_out + final);
}

double IcecEngine::max_donor_continuum_energy(double eps, const InitialState& init,
                                              const FinalLevel& final_a) const {
  const double omega = transferred_energy(eps, init.nu_a, final_a);
  return omega + donor_.initial_energy(init.nu_d) - donor_.gap;
}

double IcecEngine::max_acceptor_continuum_energy(double eps, const InitialState& init,
                                                 const FinalLevel& final_d) const {
  // eps' = 0 solved for E_{A-}
  return eps + acceptor_.initial_energy(init.nu_a) - acceptor_.gap + donor_.initial_energy(init.nu_d) -
         donor_.gap - donor_.final_energy(final_d);
}

double IcecEngine::pr_cross_section(double eps) const {
  if (eps < 0.0)
    throw InputError("incoming electron energy must be non-negative");
  const auto& a = cfg_.acceptor;
  const double omega = eps + a.ip_reference;
  const double sigma_pi = a.pi_table.interpolate(omega);
  if (eps == 0.0)
    return sigma_pi > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return pr_from_pi(sigma_pi, omega, eps, a.multiplicity_ratio);
}

double IcecEngine::donor_pi(double omega, const ChannelSpec& spec) const {
  if (cfg_.mode == XsMode::franck_condon)
    return cfg_.donor.pi_table.interpolate(omega);
  if (!spec.final_d.is_bound())
    throw InputError("ab-initio-resolved mode has no dissociative donor tables");
  const auto it = cfg_.donor.resolved->find({spec.initial.nu_d, spec.final_d.index});
  if (it == cfg_.donor.resolved->end())
    throw InputError(fmt::format("missing resolved PI table pi_nu{}_nup{}", spec.initial.nu_d,
                                 spec.final_d.index));
  return it->second.interpolate(omega);
}

double IcecEngine::base_xs(double eps, double omega, const ChannelSpec& spec) const {
  constexpr double pi = std::numbers::pi;
  const double c = units::speed_of_light_au;
  const double c2 = c * c;
  const double w2 = omega * omega;
  const double r3 = cfg_.r_ad * cfg_.r_ad * cfg_.r_ad;
  return 3.0 * c2 * c2 / (4.0 * pi) * pr_cross_section(eps) * donor_pi(omega, spec) / (w2 * w2 * r3 * r3);
}

void IcecEngine::check_initial(const InitialState& init) const {
  acceptor_.initial_energy(init.nu_a);
  donor_.initial_energy(init.nu_d);
}

ChannelResult IcecEngine::channel_xs(double eps, const ChannelSpec& spec) const {
  if (eps < 0.0)
    throw InputError("incoming electron energy must be non-negative");
  check_initial(spec.initial);
  ChannelResult r;
  r.spec = spec;
  r.omega = transferred_energy(eps, spec.initial.nu_a, spec.final_a);
  r.eps_out = outgoing_energy(r.omega, spec.initial.nu_d, spec.final_d);
  r.open = is_open(r.eps_out);
  if (!r.open)
    return r;
  double factor = acceptor_.factor(spec.initial.nu_a, spec.final_a);
  if (cfg_.mode == XsMode::franck_condon)
    factor *= donor_.factor(spec.initial.nu_d, spec.final_d);
  if (factor == 0.0)
    return r;
  r.sigma = factor * base_xs(eps, r.omega, spec);
  return r;
}

double IcecEngine::electronic_xs(double eps) const {
  constexpr double pi = std::numbers::pi;
  const double c = units::speed_of_light_au;
  const double omega = eps + cfg_.acceptor.ip_reference;
  const double r6 = std::pow(cfg_.r_ad, 6);
  return 3.0 * std::pow(c, 4) / (4.0 * pi) * pr_cross_section(eps) * cfg_.donor.pi_table.interpolate(omega) /
         (std::pow(omega, 4) * r6);
}

namespace {

double clipped(double upper, double lo, double width) { return std::clamp(upper - lo, 0.0, width); }

void require_coverage(const SpeciesModel& m, double e_max, const char* who) {
  if (!m.has_continuum() || e_max <= 0.0)
    return;
  const auto& s = m.continuum.states;
  const double top = s.back().energy + m.continuum.cell_width(s.size() - 1);
  if (e_max > top)
    throw InputError(fmt::format("{} continuum needed up to {:.4f} eV but the box only reaches {:.4f} eV; "
                                 "raise box e_max",
                                 who, units::to_eV(e_max), units::to_eV(top)));
}

} // namespace

void IcecEngine::visit_channels(double eps, const InitialState& init, const ChannelVisitor& visit) const {
  if (eps < 0.0)
    throw InputError("incoming electron energy must be non-negative");
  check_initial(init);
  const bool donor_continuum = donor_.has_continuum() && cfg_.mode == XsMode::franck_condon;
  const bool acceptor_continuum = acceptor_.has_continuum();

  using Class = Contribution::Class;
  const int n_final_a = static_cast<int>(acceptor_.final_levels.size());
  const int n_final_d = static_cast<int>(donor_.final_levels.size());

  auto donor_bound_levels = [&]() {
    std::vector<int> out;
    for (int fd = 0; fd < n_final_d; ++fd) {
      if (cfg_.mode == XsMode::ab_initio_resolved && !cfg_.donor.resolved->contains({init.nu_d, fd}))
        continue;
      out.push_back(fd);
    }
    return out;
  };
  const auto bound_d = donor_bound_levels();
  if (cfg_.mode == XsMode::ab_initio_resolved && bound_d.empty())
    throw InputError(fmt::format("no resolved PI tables for initial donor level {}", init.nu_d));

  // A bound: bound-bound sticks and D continuum integrals.
  for (int fa = 0; fa < n_final_a; ++fa) {
    const auto final_a = FinalLevel::bound(fa);
    // eps' of the dissociation threshold E_{D+} = 0 equals the integration limit.
    const double e_max = max_donor_continuum_energy(eps, init, final_a);
    for (int fd : bound_d) {
      Contribution c;
      c.cls = Class::bound_bound;
      c.channel = channel_xs(eps, {init, final_a, FinalLevel::bound(fd)});
      c.eps_out_dissociation = e_max;
      if (c.channel.open)
        visit(c);
    }
    if (!donor_continuum)
      continue;
    require_coverage(donor_, e_max, "donor");
    const auto& states = donor_.continuum.states;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double w = clipped(e_max, states[i].energy, donor_.continuum.cell_width(i));
      if (w <= 0.0)
        break;
      Contribution c;
      c.cls = Class::bound_dissociative;
      c.channel = channel_xs(eps, {init, final_a, FinalLevel::continuum(static_cast<int>(i))});
      c.width = w;
      c.eps_out_dissociation = e_max;
      // Cells whose left edge sits at the threshold are closed; skip them.
      if (c.channel.open)
        visit(c);
    }
  }

  if (!acceptor_continuum)
    return;

  // A dissociates, D bound.
  const auto& a_states = acceptor_.continuum.states;
  for (int fd : bound_d) {
    const auto final_d = FinalLevel::bound(fd);
    const double e_max = max_acceptor_continuum_energy(eps, init, final_d);
    require_coverage(acceptor_, e_max, "acceptor");
    for (std::size_t j = 0; j < a_states.size(); ++j) {
      const double w = clipped(e_max, a_states[j].energy, acceptor_.continuum.cell_width(j));
      if (w <= 0.0)
        break;
      Contribution c;
      c.cls = Class::dissociative_bound;
      c.channel = channel_xs(eps, {init, FinalLevel::continuum(static_cast<int>(j)), final_d});
      c.width = w;
      if (c.channel.open)
        visit(c);
    }
  }

  if (!donor_continuum)
    return;

  // Both dissociate: outer integral over E_{D+} (limit with E_{A-} = 0),
  // inner over E_{A-} up to its E_{D+}-dependent limit.
  const auto& d_states = donor_.continuum.states;
  const double outer_max = eps + acceptor_.initial_energy(init.nu_a) - acceptor_.gap +
                           donor_.initial_energy(init.nu_d) - donor_.gap;
  require_coverage(donor_, outer_max, "donor");
  for (std::size_t i = 0; i < d_states.size(); ++i) {
    const double wi = clipped(outer_max, d_states[i].energy, donor_.continuum.cell_width(i));
    if (wi <= 0.0)
      break;
    const auto final_d = FinalLevel::continuum(static_cast<int>(i));
    const double inner_max = outer_max - d_states[i].energy;
    require_coverage(acceptor_, inner_max, "acceptor");
    for (std::size_t j = 0; j < a_states.size(); ++j) {
      const double wj = clipped(inner_max, a_states[j].energy, acceptor_.continuum.cell_width(j));
      if (wj <= 0.0)
        break;
      Contribution c;
      c.cls = Class::double_dissociative;
      c.channel = channel_xs(eps, {init, FinalLevel::continuum(static_cast<int>(j)), final_d});
      c.width = wj;
      c.outer_weight = wi;
      if (c.channel.open)
        visit(c);
    }
  }
}

TotalXs IcecEngine::total_xs(double eps, const InitialState& init) const {
  TotalXs t;
  visit_channels(eps, init, [&](const Contribution& c) {
    const double s = c.channel.sigma * c.width * c.outer_weight;
    switch (c.cls) {
    case Contribution::Class::bound_bound: t.bound_bound += s; break;
    case Contribution::Class::bound_dissociative: t.bound_dissociative += s; break;
    case Contribution::Class::dissociative_bound: t.dissociative_bound += s; break;
    case Contribution::Class::double_dissociative: t.double_dissociative += s; break;
    }
  });
  return t;
}

std::vector<ChannelSpec> IcecEngine::enumerate_channels(const InitialState& init) const {
  check_initial(init);
  auto finals = [](const SpeciesModel& m, bool with_continuum) {
    std::vector<FinalLevel> out;
    for (const auto& l : m.final_levels)
      out.push_back(FinalLevel::bound(l.nu));
    if (with_continuum)
      for (std::size_t i = 0; i < m.continuum.states.size(); ++i)
        out.push_back(FinalLevel::continuum(static_cast<int>(i)));
    return out;
  };
  const auto fa = finals(acceptor_, acceptor_.has_continuum());
  const auto fd = finals(donor_, donor_.has_continuum() && cfg_.mode == XsMode::franck_condon);
  std::vector<ChannelSpec> out;
  out.reserve(fa.size() * fd.size());
  for (const auto& a : fa)
    for (const auto& d : fd)
      out.push_back({init, a, d});
  return out;
}

std::vector<ThermalWeight> IcecEngine::thermal_weights(double temperature) const {
  if (temperature < 0.0)
    throw InputError("temperature must be non-negative");
  std::vector<int> donor_levels;
  for (const auto& l : donor_.initial_levels) {
    if (cfg_.mode == XsMode::ab_initio_resolved) {
      const bool any = std::any_of(cfg_.donor.resolved->begin(), cfg_.donor.resolved->end(),
                                   [&](const auto& kv) { return kv.first.first == l.nu; });
      if (!any)
        continue;
    }
    donor_levels.push_back(l.nu);
  }

  struct Candidate {
    InitialState state;
    double excitation;
  };
  std::vector<Candidate> all;
  const double ea0 = acceptor_.initial_levels.front().energy;
  const double ed0 = donor_.initial_levels.front().energy;
  for (const auto& la : acceptor_.initial_levels)
    for (int nd : donor_levels)
      all.push_back({{la.nu, nd}, (la.energy - ea0) + (donor_.initial_energy(nd) - ed0)});
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& b) { return a.excitation < b.excitation; });

  if (temperature == 0.0)
    return {{all.front().state, 1.0}};

  const double kt = units::thermal_energy(temperature);
  double z = 0.0;
  for (const auto& c : all)
    z += std::exp(-(c.excitation - all.front().excitation) / kt);

  std::vector<ThermalWeight> out;
  double cumulative = 0.0;
  for (const auto& c : all) {
    const double w = std::exp(-(c.excitation - all.front().excitation) / kt) / z;
    out.push_back({c.state, w});
    cumulative += w;
    if (cumulative > 1.0 - 1e-6)
      break;
  }
  double norm = 0.0;
  for (const auto& w : out)
    norm += w.weight;
  for (auto& w : out)
    w.weight = out.size() == 1 ? 1.0 : w.weight / norm;
  return out;
}

double IcecEngine::thermal_xs(double eps, double temperature) const {
  double s = 0.0;
  for (const auto& w : thermal_weights(temperature))
    s += w.weight * total_xs(eps, w.state).total();
  return s;
}

} // namespace icec
