#pragma once

// Subcommand implementations behind the `icec` executable.

#include "icec/config.hpp"

#include <exception>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace icec {

struct CommandOptions {
  std::filesystem::path out_dir; // empty: use the config's output directory
  unsigned threads = 1;
  std::ostream* log = nullptr;   // warnings; defaults to std::cerr
  std::ostream* report = nullptr; // validate report; defaults to std::cout
};

// Writes one CSV per temperature (or a single one without temperatures).
std::vector<std::filesystem::path> cmd_total(const RunConfig& cfg, const CommandOptions& opt);

// Writes a spectrum CSV and JSON sidecar per temperature.
std::vector<std::filesystem::path> cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt);

struct ValidationCheck {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

std::vector<ValidationCheck> run_validation(const RunConfig& cfg, unsigned threads);

// Prints the report; returns the process exit code (0 or 1).
int cmd_validate(const RunConfig& cfg, const CommandOptions& opt);

// Runs f(0..n-1) on up to `threads` workers. Results keep input order; the
// first exception (by index) is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& f);

std::string output_header(const RunConfig& cfg, const std::string& what);
std::string temperature_tag(double kelvin);

} // namespace icec

#include "icec/detail/parallel.hpp"
