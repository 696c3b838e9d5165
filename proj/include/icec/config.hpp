#pragma once

// Run configuration: a JSON document with explicit units in every key name
// (`_eV`, `_hartree`, `_cm-1`, `_bohr`, `_angstrom`, `_Mb`, `_K`).

#include "icec/engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace icec {

inline constexpr int config_schema_version = 1;

struct RunBlock {
  double eps_min_eV = 0.1;
  double eps_max_eV = 4.0;
  std::size_t eps_steps = 40;
  double spectrum_eps_eV = 1.0;
  std::vector<double> temperatures_K;
  double lorentz_half_width_eV = 0.08;
  std::size_t spectrum_points = 2000;

  std::vector<double> eps_grid_eV() const;
};

struct RunConfig {
  EngineConfig engine;
  RunBlock run;
  std::filesystem::path output_directory = "icec_out";
  nlohmann::json document;           // as parsed
  std::string hash;                  // FNV-1a over the document and referenced files
};

// Throws InputError naming the offending key or file.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// Built-in presets; currently `h_plus_lih`.
nlohmann::json preset_document(std::string_view name);
RunConfig load_preset(std::string_view name);

std::string fnv1a_hex(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace icec
