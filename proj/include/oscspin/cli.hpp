#pragma once

// Scenario-driven front end: configuration parsing with materialized
// defaults, deterministic CSV/JSON result tables, and the run_* entry
// points used by the oscspin binary and by the test suite.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oscspin/errors.hpp"

namespace oscspin::cli {

enum class Mode {
  coefficients,
  sweep_temperature,
  evolve_bm,
  evolve_joint,
  evolve_adiabatic,
  fig2,
  fig3,
  verify,
};

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

// Flat "section.key" -> value store. Construction materializes every
// default; file loads and --set overrides may only touch known keys.
class ConfigMap {
 public:
  ConfigMap();

  void load_file(const std::string& path);
  void set_override(const std::string& dotted_key, const std::string& value);

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  // Canonical "key = value" lines, sorted by key; basis of the config hash.
  std::string canonical_text() const;
  std::string hash() const;  // FNV-1a 64 over the canonical text

  const std::map<std::string, std::string>& entries() const {
    return values_;
  }

 private:
  std::map<std::string, std::string> values_;
};

struct ScenarioConfig {
  Mode mode = Mode::verify;
  ConfigMap config;
  std::string out_dir = ".";
  bool timestamp = true;
  int jobs = 0;  // 0 = hardware concurrency
};

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  std::string to_csv(bool with_timestamp) const;
  std::string to_json() const;
};

// Writes table files (csv/json per output.format) into cfg.out_dir and
// returns the paths written.
std::vector<std::string> write_table(const ScenarioConfig& cfg,
                                     const ResultTable& table);

ResultTable run_coefficients(const ScenarioConfig& cfg);
ResultTable run_sweep_temperature(const ScenarioConfig& cfg);
ResultTable run_evolve(const ScenarioConfig& cfg);  // bm/joint/adiabatic
ResultTable run_fig2(const ScenarioConfig& cfg);
std::vector<ResultTable> run_fig3(const ScenarioConfig& cfg);

struct VerifyCheck {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = true;
};

VerifyReport run_verify(const ScenarioConfig& cfg);

// Executes the configured mode end to end (writing outputs); returns the
// process exit code (0 ok, 1 verify failure, 2 config error, 3 numerical
// quality gate).
int run_scenario(const ScenarioConfig& cfg);

// Index-sharded parallel loop (order-stable by index).
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace oscspin::cli
