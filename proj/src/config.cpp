#include "icec/config.hpp"

#include "icec/error.hpp"
#include "icec/units.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace icec {

using nlohmann::json;

std::vector<double> RunBlock::eps_grid_eV() const {
  if (eps_steps == 1)
    return {eps_min_eV};
  std::vector<double> g(eps_steps);
  for (std::size_t i = 0; i < eps_steps; ++i)
    g[i] = eps_min_eV + (eps_max_eV - eps_min_eV) * static_cast<double>(i) / static_cast<double>(eps_steps - 1);
  return g;
}

std::string fnv1a_hex(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

namespace {

struct Ctx {
  std::filesystem::path base;
  std::string files_digest;
};

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object())
    throw InputError(fmt::format("config: '{}' must be an object", where));
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (auto key : keys)
      known = known || k == key;
    if (!known)
      throw InputError(fmt::format("config: unknown key '{}' in '{}'", k, where));
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw InputError(fmt::format("config: missing '{}' in '{}'", key, where));
  if (!it->is_number())
    throw InputError(fmt::format("config: '{}.{}' must be a number", where, key));
  return it->get<double>();
}

struct UnitKey {
  std::string_view suffix;
  double to_au;
};

// Reads `<stem><suffix>` for exactly one of the accepted unit suffixes and
// returns the value in atomic units.
std::optional<double> quantity(const json& obj, std::string_view stem, const std::string& where,
                               std::initializer_list<UnitKey> accepted, bool required = true) {
  std::optional<double> out;
  std::string found;
  for (const auto& u : accepted) {
    const std::string key = std::string(stem) + std::string(u.suffix);
    if (!obj.contains(key))
      continue;
    if (out)
      throw InputError(fmt::format("config: '{}' given twice in '{}' ({} and {})", stem, where, found, key));
    out = number(obj, key, where) * u.to_au;
    found = key;
  }
  if (!out && required) {
    std::string options;
    for (const auto& u : accepted)
      options += fmt::format("{}{}{}", options.empty() ? "" : " | ", stem, u.suffix);
    throw InputError(fmt::format("config: missing '{}' in '{}'", options, where));
  }
  return out;
}

const std::initializer_list<UnitKey> energy_units = {
    {"_eV", 1.0 / units::hartree_in_eV}, {"_hartree", 1.0}, {"_cm-1", 1.0 / units::hartree_in_wavenumber}};
const std::initializer_list<UnitKey> length_units = {{"_bohr", 1.0}, {"_angstrom", 1.0 / units::bohr_in_angstrom}};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw InputError(fmt::format("cannot open {}", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CrossSectionTable table_from(const json& t, const std::string& where, const std::string& label, Ctx& ctx) {
  if (t.contains("file")) {
    reject_unknown(t, where, {"file"});
    const auto path = ctx.base / t.at("file").get<std::string>();
    const auto bytes = read_file(path);
    ctx.files_digest += fnv1a_hex(bytes);
    std::istringstream in(bytes);
    return load_table(in, path.string());
  }
  reject_unknown(t, where, {"constant_Mb", "anchor_eV", "window_eV"});
  const double value = number(t, "constant_Mb", where);
  const double anchor = number(t, "anchor_eV", where);
  const auto& w = t.at("window_eV");
  if (!w.is_array() || w.size() != 2)
    throw InputError(fmt::format("config: '{}.window_eV' must be [lo, hi]", where));
  return CrossSectionTable::constant(units::eV(anchor), units::megabarn(value), units::eV(w[0].get<double>()),
                                     units::eV(w[1].get<double>()), label);
}

MorseParams curve_from(const json& c, const std::string& where, std::optional<double> default_mu) {
  reject_unknown(c, where,
                 {"De_eV", "De_hartree", "De_cm-1", "omega_e_eV", "omega_e_hartree", "omega_e_cm-1", "Re_bohr",
                  "Re_angstrom", "mu_au"});
  MorseParams p;
  p.dissociation_energy = *quantity(c, "De", where, energy_units);
  p.harmonic_frequency = *quantity(c, "omega_e", where, energy_units);
  p.equilibrium_distance = *quantity(c, "Re", where, length_units);
  if (c.contains("mu_au"))
    p.reduced_mass = number(c, "mu_au", where);
  else if (default_mu)
    p.reduced_mass = *default_mu;
  else
    throw InputError(fmt::format("config: missing 'mu_au' in '{}'", where));
  p.validate();
  return p;
}

SpeciesSpec species_from(const json& s, Role role, Ctx& ctx) {
  const std::string where = role == Role::acceptor ? "system.acceptor" : "system.donor";
  reject_unknown(s, where,
                 {"name", "kind", "ip_eV", "ip_hartree", "g_ratio", "pi_table", "initial_curve", "final_curve",
                  "resolved_pi_dir"});
  const auto name = s.value("name", role == Role::acceptor ? std::string("A") : std::string("D"));
  const auto kind = s.value("kind", std::string("atomic"));
  const double ip = *quantity(s, "ip", where, {{"_eV", 1.0 / units::hartree_in_eV}, {"_hartree", 1.0}});
  const double g = s.contains("g_ratio") ? number(s, "g_ratio", where) : 1.0;
  if (!s.contains("pi_table"))
    throw InputError(fmt::format("config: missing 'pi_table' in '{}'", where));
  auto table = table_from(s.at("pi_table"), where + ".pi_table", name + " PI", ctx);

  SpeciesSpec spec;
  if (kind == "atomic") {
    if (s.contains("initial_curve") || s.contains("final_curve"))
      throw InputError(fmt::format("config: atomic '{}' must not define potential curves", where));
    spec = SpeciesSpec::atomic(name, role, ip, g, std::move(table));
  } else if (kind == "diatomic") {
    if (!s.contains("initial_curve") || !s.contains("final_curve"))
      throw InputError(fmt::format("config: diatomic '{}' needs initial_curve and final_curve", where));
    const auto initial = curve_from(s.at("initial_curve"), where + ".initial_curve", std::nullopt);
    const auto final_curve = curve_from(s.at("final_curve"), where + ".final_curve", initial.reduced_mass);
    spec = SpeciesSpec::diatomic(name, role, ip, g, std::move(table), initial, final_curve);
  } else {
    throw InputError(fmt::format("config: '{}.kind' must be 'atomic' or 'diatomic'", where));
  }
  if (s.contains("resolved_pi_dir")) {
    const auto dir = ctx.base / s.at("resolved_pi_dir").get<std::string>();
    spec.resolved = load_resolved_set(dir);
    for (const auto& [key, t] : *spec.resolved)
      ctx.files_digest += fnv1a_hex(read_file(t.label()));
  }
  return spec;
}

} // namespace

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown(doc, "<root>", {"schema_version", "system", "r_ad_angstrom", "r_ad_bohr", "mode", "box", "run", "output"});
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw InputError("config: missing integer 'schema_version'");
  if (doc.at("schema_version").get<int>() != config_schema_version)
    throw InputError(fmt::format("config: unsupported schema_version {} (expected {})",
                                 doc.at("schema_version").get<int>(), config_schema_version));
  Ctx ctx{base_dir, {}};
  RunConfig rc;
  rc.document = doc;

  if (!doc.contains("system"))
    throw InputError("config: missing 'system'");
  const auto& sys = doc.at("system");
  reject_unknown(sys, "system", {"acceptor", "donor"});
  if (!sys.contains("acceptor") || !sys.contains("donor"))
    throw InputError("config: 'system' needs 'acceptor' and 'donor'");
  rc.engine.acceptor = species_from(sys.at("acceptor"), Role::acceptor, ctx);
  rc.engine.donor = species_from(sys.at("donor"), Role::donor, ctx);
  rc.engine.r_ad = *quantity(doc, "r_ad", "<root>", length_units);

  const auto mode = doc.value("mode", std::string("fc"));
  if (mode == "fc")
    rc.engine.mode = XsMode::franck_condon;
  else if (mode == "ab-initio-resolved")
    rc.engine.mode = XsMode::ab_initio_resolved;
  else
    throw InputError("config: 'mode' must be 'fc' or 'ab-initio-resolved'");

  if (doc.contains("run")) {
    const auto& r = doc.at("run");
    reject_unknown(r, "run", {"eps_eV", "spectrum_eps_eV", "temperatures_K", "lorentz_half_width_eV", "spectrum_points"});
    if (r.contains("eps_eV")) {
      const auto& e = r.at("eps_eV");
      reject_unknown(e, "run.eps_eV", {"min", "max", "steps"});
      rc.run.eps_min_eV = number(e, "min", "run.eps_eV");
      rc.run.eps_max_eV = number(e, "max", "run.eps_eV");
      rc.run.eps_steps = static_cast<std::size_t>(number(e, "steps", "run.eps_eV"));
    }
    if (r.contains("spectrum_eps_eV"))
      rc.run.spectrum_eps_eV = number(r, "spectrum_eps_eV", "run");
    if (r.contains("temperatures_K"))
      rc.run.temperatures_K = r.at("temperatures_K").get<std::vector<double>>();
    if (r.contains("lorentz_half_width_eV"))
      rc.run.lorentz_half_width_eV = number(r, "lorentz_half_width_eV", "run");
    if (r.contains("spectrum_points"))
      rc.run.spectrum_points = static_cast<std::size_t>(number(r, "spectrum_points", "run"));
  }
  const auto& run = rc.run;
  if (run.eps_steps < 1 || run.eps_min_eV < 0.0 || run.eps_max_eV < run.eps_min_eV)
    throw InputError("config: run.eps_eV needs 0 <= min <= max and steps >= 1");
  if (run.spectrum_eps_eV < 0.0)
    throw InputError("config: run.spectrum_eps_eV must be non-negative");
  for (double t : run.temperatures_K)
    if (!(t >= 0.0))
      throw InputError("config: temperatures must be non-negative");
  if (!(run.lorentz_half_width_eV > 0.0))
    throw InputError("config: run.lorentz_half_width_eV must be positive");
  if (run.spectrum_points < 2)
    throw InputError("config: run.spectrum_points must be at least 2");

  auto& box = rc.engine.box;
  box.r_min = 0.3;
  box.r_max = units::angstrom(8.0);
  if (doc.contains("box")) {
    const auto& b = doc.at("box");
    reject_unknown(b, "box", {"r_min_bohr", "r_min_angstrom", "r_max_bohr", "r_max_angstrom", "n_grid", "e_max_eV",
                              "e_max_hartree"});
    if (auto v = quantity(b, "r_min", "box", length_units, false))
      box.r_min = *v;
    if (auto v = quantity(b, "r_max", "box", length_units, false))
      box.r_max = *v;
    if (b.contains("n_grid"))
      box.n_grid = static_cast<std::size_t>(number(b, "n_grid", "box"));
    if (auto v = quantity(b, "e_max", "box", {{"_eV", 1.0 / units::hartree_in_eV}, {"_hartree", 1.0}}, false))
      box.e_max = *v;
  }
  if (box.e_max <= 0.0) {
    // Largest energy the acceptor can hand over during the run.
    const double eps_top = std::max(run.eps_max_eV, run.spectrum_eps_eV);
    box.e_max = units::eV(eps_top) + rc.engine.acceptor.ip_reference;
  }

  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    reject_unknown(o, "output", {"directory"});
    if (o.contains("directory"))
      rc.output_directory = o.at("directory").get<std::string>();
  }

  rc.engine.validate();
  rc.hash = fnv1a_hex(doc.dump() + ctx.files_digest);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  try {
    return parse_run_config(doc, path.parent_path());
  } catch (const json::exception& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

json preset_document(std::string_view name) {
  if (name != "h_plus_lih")
    throw InputError(fmt::format("unknown preset '{}'", name));
  // H+ acceptor with LiH donor; Morse constants and PI anchors at 14.6 eV,
  // R_AD from the [LiHH]+ collinear minimum.
  return json::parse(R"({
  "schema_version": 1,
  "system": {
    "acceptor": {
      "name": "H+",
      "kind": "atomic",
      "ip_eV": 13.6,
      "g_ratio": 2.0,
      "pi_table": {"constant_Mb": 5.23, "anchor_eV": 14.6, "window_eV": [13.6, 30.0]}
    },
    "donor": {
      "name": "LiH",
      "kind": "diatomic",
      "ip_eV": 7.7,
      "pi_table": {"constant_Mb": 7.13, "anchor_eV": 14.6, "window_eV": [5.0, 30.0]},
      "initial_curve": {"De_eV": 2.4924, "omega_e_cm-1": 1406.18, "Re_bohr": 3.0148, "mu_au": 1618.09},
      "final_curve": {"De_eV": 0.14374, "omega_e_cm-1": 442.9, "Re_bohr": 4.136}
    }
  },
  "r_ad_angstrom": 3.95,
  "mode": "fc",
  "box": {"r_min_bohr": 0.3, "r_max_angstrom": 8.0, "n_grid": 4000},
  "run": {
    "eps_eV": {"min": 0.1, "max": 4.0, "steps": 40},
    "spectrum_eps_eV": 1.0,
    "temperatures_K": [],
    "lorentz_half_width_eV": 0.08,
    "spectrum_points": 2000
  },
  "output": {"directory": "icec_out"}
})");
}

RunConfig load_preset(std::string_view name) { return parse_run_config(preset_document(name), "."); }

} // namespace icec
