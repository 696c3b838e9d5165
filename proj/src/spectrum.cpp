#include "icec/spectrum.hpp"

#include "icec/error.hpp"
#include "icec/units.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

namespace icec {

double DensityComponent::integral() const {
  double s = 0.0;
  for (const auto& p : points)
    s += p.value * p.width;
  return s;
}

double DensityComponent::sample(double x) const {
  if (points.empty() || x < points.front().eps_out || x > points.back().eps_out)
    return 0.0;
  if (points.size() == 1)
    return points.front().value;
  const auto it = std::upper_bound(points.begin(), points.end(), x,
                                   [](double v, const DensityPoint& p) { return v < p.eps_out; });
  if (it == points.end())
    return points.back().value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (x - lo.eps_out) / (hi.eps_out - lo.eps_out);
  return lo.value + t * (hi.value - lo.value);
}

double Spectrum::stick_sum() const {
  double s = 0.0;
  for (const auto& st : sticks)
    s += st.sigma;
  return s;
}

double Spectrum::density_integral() const {
  double s = 0.0;
  for (const auto& c : density)
    s += c.integral();
  return s;
}

double Spectrum::density_at(double x) const {
  double s = 0.0;
  for (const auto& c : density)
    s += c.sample(x);
  return s;
}

std::vector<double> Spectrum::density_on(std::span<const double> grid) const {
  std::vector<double> out(grid.size(), 0.0);
  for (const auto& c : density)
    for (std::size_t i = 0; i < grid.size(); ++i)
      out[i] += c.sample(grid[i]);
  return out;
}

double Spectrum::max_eps_out() const {
  double m = 0.0;
  for (const auto& st : sticks)
    m = std::max(m, st.eps_out);
  for (const auto& c : density)
    if (!c.points.empty())
      m = std::max(m, c.points.back().eps_out);
  return m;
}

std::string channel_label(const ChannelSpec& spec) {
  auto level = [](const FinalLevel& f) {
    return f.is_bound() ? fmt::format("{}", f.index) : fmt::format("E[{}]", f.index);
  };
  return fmt::format("A:{}->{} D:{}->{}", spec.initial.nu_a, level(spec.final_a), spec.initial.nu_d,
                     level(spec.final_d));
}

namespace {

std::string component_label(const Contribution& c) {
  const auto& s = c.channel.spec;
  switch (c.cls) {
  case Contribution::Class::bound_dissociative:
    return fmt::format("A:{}->{} D:{}->E", s.initial.nu_a, s.final_a.index, s.initial.nu_d);
  case Contribution::Class::dissociative_bound:
    return fmt::format("A:{}->E D:{}->{}", s.initial.nu_a, s.initial.nu_d, s.final_d.index);
  case Contribution::Class::double_dissociative:
    return fmt::format("A:{}->E D:{}->E[{}]", s.initial.nu_a, s.initial.nu_d, s.final_d.index);
  case Contribution::Class::bound_bound: break;
  }
  return channel_label(s);
}

} // namespace

Spectrum electron_spectrum(const IcecEngine& engine, double eps, const InitialState& init) {
  Spectrum out;
  out.epsilon_in = eps;
  const bool cutoffs = engine.donor().has_continuum() && engine.config().mode == XsMode::franck_condon;

  std::map<std::string, DensityComponent> components;
  std::vector<std::string> order;
  engine.visit_channels(eps, init, [&](const Contribution& c) {
    if (c.cls == Contribution::Class::bound_bound) {
      Stick st;
      st.channel = c.channel.spec;
      st.eps_out = c.channel.eps_out;
      st.sigma = c.channel.sigma;
      if (cutoffs)
        st.cutoff = c.eps_out_dissociation;
      st.label = channel_label(st.channel);
      out.sticks.push_back(std::move(st));
      return;
    }
    const auto label = component_label(c);
    auto [it, inserted] = components.try_emplace(label);
    if (inserted) {
      it->second.label = label;
      it->second.initial = init;
      it->second.cls = c.cls;
      order.push_back(label);
    }
    const auto& spec = c.channel.spec;
    const double fragment = c.cls == Contribution::Class::dissociative_bound
                                ? engine.acceptor().final_energy(spec.final_a)
                                : engine.donor().final_energy(spec.final_d);
    it->second.points.push_back({c.channel.eps_out, c.channel.sigma * c.outer_weight, c.width, fragment});
  });

  for (const auto& label : order) {
    auto& comp = components.at(label);
    std::sort(comp.points.begin(), comp.points.end(),
              [](const DensityPoint& a, const DensityPoint& b) { return a.eps_out < b.eps_out; });
    out.density.push_back(std::move(comp));
  }
  return out;
}

Spectrum thermal_spectrum(const IcecEngine& engine, double eps, double temperature) {
  Spectrum out;
  out.epsilon_in = eps;
  out.temperature = temperature;
  for (const auto& w : engine.thermal_weights(temperature)) {
    auto s = electron_spectrum(engine, eps, w.state);
    for (auto& st : s.sticks) {
      st.sigma *= w.weight;
      out.sticks.push_back(std::move(st));
    }
    for (auto& c : s.density) {
      for (auto& p : c.points)
        p.value *= w.weight;
      out.density.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> lorentz_fold(std::span<const Stick> sticks, double gamma, std::span<const double> grid) {
  if (!(gamma > 0.0))
    throw InputError("Lorentz half width must be positive");
  std::vector<double> out(grid.size(), 0.0);
  const double norm = gamma / std::numbers::pi;
  for (const auto& st : sticks) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (st.cutoff && grid[i] < *st.cutoff)
        continue;
      const double d = grid[i] - st.eps_out;
      out[i] += st.sigma * norm / (d * d + gamma * gamma);
    }
  }
  return out;
}

std::vector<double> spectrum_grid(const Spectrum& s, double gamma, std::size_t points) {
  if (points < 2)
    throw InputError("spectrum grid needs at least two points");
  const double top = s.max_eps_out() + 10.0 * gamma;
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = top * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y, double floor_fraction) {
  std::vector<Peak> peaks;
  const std::size_t n = y.size();
  if (n < 3)
    return peaks;
  const double global = *std::max_element(y.begin(), y.end());
  if (!(global > 0.0))
    return peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1]))
      continue;
    double left_min = y[i];
    for (std::size_t k = i; k-- > 0;) {
      if (y[k] > y[i])
        break;
      left_min = std::min(left_min, y[k]);
    }
    double right_min = y[i];
    for (std::size_t k = i + 1; k < n; ++k) {
      if (y[k] > y[i])
        break;
      right_min = std::min(right_min, y[k]);
    }
    const double prominence = y[i] - std::max(left_min, right_min);
    if (prominence >= floor_fraction * global)
      peaks.push_back({i, x[i], y[i], prominence});
  }
  return peaks;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s, double gamma, std::size_t points,
                        std::span<const std::string> header) {
  const auto grid = spectrum_grid(s, gamma, points);
  const auto density = s.density_on(grid);
  const auto folded = lorentz_fold(s.sticks, gamma, grid);
  std::vector<double> binned(grid.size(), 0.0);
  const double step = grid[1] - grid[0];
  for (const auto& st : s.sticks) {
    const auto k = static_cast<std::size_t>(std::lround(st.eps_out / step));
    if (k < binned.size())
      binned[k] += st.sigma;
  }
  for (const auto& h : header)
    os << "# " << h << '\n';
  os << "eps_out_eV,sticks_Mb,density_Mb_per_eV,folded_Mb_per_eV\n";
  const double per_eV = units::bohr2_in_megabarn / units::hartree_in_eV;
  for (std::size_t i = 0; i < grid.size(); ++i)
    fmt::print(os, "{:.8f},{:.10e},{:.10e},{:.10e}\n", units::to_eV(grid[i]),
               units::to_megabarn(binned[i]), density[i] * per_eV, folded[i] * per_eV);
}

nlohmann::json spectrum_sidecar(const Spectrum& s, double gamma) {
  using nlohmann::json;
  const double per_eV = units::bohr2_in_megabarn / units::hartree_in_eV;
  json j;
  j["epsilon_in_eV"] = units::to_eV(s.epsilon_in);
  j["temperature_K"] = s.temperature ? json(*s.temperature) : json(nullptr);
  j["lorentz_half_width_eV"] = units::to_eV(gamma);
  j["stick_sum_Mb"] = units::to_megabarn(s.stick_sum());
  j["density_integral_Mb"] = units::to_megabarn(s.density_integral());
  json sticks = json::array();
  for (const auto& st : s.sticks) {
    json e;
    e["label"] = st.label;
    e["eps_out_eV"] = units::to_eV(st.eps_out);
    e["sigma_Mb"] = units::to_megabarn(st.sigma);
    e["cutoff_eV"] = st.cutoff ? json(units::to_eV(*st.cutoff)) : json(nullptr);
    sticks.push_back(std::move(e));
  }
  j["sticks"] = std::move(sticks);
  json comps = json::array();
  for (const auto& c : s.density) {
    json e;
    e["label"] = c.label;
    e["initial"] = {{"nu_a", c.initial.nu_a}, {"nu_d", c.initial.nu_d}};
    e["integral_Mb"] = units::to_megabarn(c.integral());
    e["points"] = c.points.size();
    if (!c.points.empty()) {
      e["eps_out_range_eV"] = {units::to_eV(c.points.front().eps_out), units::to_eV(c.points.back().eps_out)};
      const auto peak = std::max_element(c.points.begin(), c.points.end(),
                                         [](const auto& a, const auto& b) { return a.value < b.value; });
      e["max_density_Mb_per_eV"] = peak->value * per_eV;
      e["max_at_eps_out_eV"] = units::to_eV(peak->eps_out);
    }
    comps.push_back(std::move(e));
  }
  j["density_components"] = std::move(comps);
  return j;
}

} // namespace icec
