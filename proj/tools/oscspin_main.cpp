#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscspin/cli.hpp"
#include "oscspin/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"oscillator-spin decoherence model: coefficients, sweeps and "
               "density-matrix evolution"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", kernels_backend;
  std::vector<std::string> overrides;
  bool no_timestamp = false;
  int jobs = 0;

  app.add_option("--config", config_path, "configuration file");
  app.add_option("--set", overrides,
                 "override a scalar key, e.g. --set tls.gamma=100")
      ->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--no-timestamp", no_timestamp,
               "omit the wall-clock header line");
  app.add_option("--jobs", jobs, "worker pool size (default: processors)");
  app.add_option("--kernels", kernels_backend,
                 "force kernel backend: scalar | avx2 | auto");

  const std::vector<std::pair<std::string, std::string>> modes = {
      {"coefficients", "coefficient set at one temperature"},
      {"sweep_temperature", "coefficients over a temperature grid"},
      {"evolve_bm", "Born-Markov oscillator evolution"},
      {"evolve_joint", "joint oscillator-TLS evolution"},
      {"evolve_adiabatic", "adiabatically eliminated evolution"},
      {"fig2", "normalized coefficient temperature dependence"},
      {"fig3", "full vs adiabatic heating comparison"},
      {"verify", "run the verification suite"},
  };
  for (const auto& [name, desc] : modes)
    app.add_subcommand(name, desc)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  oscspin::cli::ScenarioConfig cfg;
  try {
    cfg.mode =
        oscspin::cli::mode_from_string(app.get_subcommands().front()->get_name());
    if (!kernels_backend.empty())
      oscspin::kernels::force_backend(kernels_backend);
    if (!config_path.empty()) cfg.config.load_file(config_path);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw oscspin::ConfigError("--set expects key=value, got '" + kv +
                                   "'");
      cfg.config.set_override(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.out_dir = out_dir;
    cfg.timestamp = !no_timestamp;
    cfg.jobs = jobs;
  } catch (const oscspin::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  return oscspin::cli::run_scenario(cfg);
}
