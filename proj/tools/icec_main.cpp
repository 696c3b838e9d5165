#include "icec/commands.hpp"
#include "icec/error.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <thread>

int main(int argc, char** argv) {
  CLI::App app{"Vibrationally resolved ICEC cross sections and electron spectra"};
  app.set_version_flag("--version", std::string(ICEC_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto common = [&](CLI::App* sub) {
    auto* c = sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    auto* p = sub->add_option("--preset", preset, "built-in configuration (h_plus_lih)");
    c->excludes(p);
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* total = app.add_subcommand("total", "cross section vs incoming electron energy");
  auto* spectrum = app.add_subcommand("spectrum", "outgoing-electron spectrum at fixed energy");
  auto* validate = app.add_subcommand("validate", "internal consistency checks");
  for (auto* sub : {total, spectrum, validate})
    common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (config_path.empty() && preset.empty())
      throw icec::InputError("one of --config or --preset is required");
    const auto cfg = config_path.empty() ? icec::load_preset(preset) : icec::load_run_config(config_path);
    icec::CommandOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    if (total->parsed()) {
      for (const auto& p : icec::cmd_total(cfg, opt))
        std::cout << p.string() << '\n';
    } else if (spectrum->parsed()) {
      for (const auto& p : icec::cmd_spectrum(cfg, opt))
        std::cout << p.string() << '\n';
    } else {
      return icec::cmd_validate(cfg, opt);
    }
  } catch (const icec::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const icec::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const icec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
