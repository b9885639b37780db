#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "oscspin/cli.hpp"

namespace oscspin::cli {

namespace {

// Every known key with its default. Unknown keys are a hard error, so this
// table is the single source of truth for the configuration surface.
const std::vector<std::pair<const char*, const char*>> kDefaults = {
    {"oscillator.mass", "1"},
    {"oscillator.omega0", "1"},
    // auto: 30 for short evolution runs, 80 for the heated fig3 runs
    {"oscillator.cutoff", "auto"},

    {"bath.kind", "ohmic"},  // ohmic | discrete
    {"bath.gamma0", "1"},
    {"bath.lambda", "10"},
    // discrete bath: semicolon-separated omega,delta,g triples
    {"bath.spins", ""},
    {"bath.gaussian_sigma", "0.05"},

    {"coefficients.temperature", "0.1"},
    {"coefficients.d0_policy", "qbm_zero_t"},  // qbm_zero_t | zero | value
    {"coefficients.d0_value", "0"},

    {"quadrature.abs_tol", "1e-9"},
    {"quadrature.rel_tol", "1e-8"},
    {"quadrature.omega_max", "0"},
    {"quadrature.epsilon0", "0.4"},
    {"quadrature.min_epsilon_levels", "3"},
    {"quadrature.max_epsilon_levels", "10"},
    {"quadrature.extrapolation_tol", "1e-3"},
    {"quadrature.crosscheck_tol", "1e-2"},

    {"sweep.t_min", "0.02"},
    {"sweep.t_max", "3"},
    {"sweep.points", "60"},

    {"tls.delta", "1"},
    {"tls.g", "1"},
    {"tls.gamma", "10"},
    {"tls.nbar", "0"},
    {"tls.nbar_list", "0,0.5,1"},
    {"tls.gamma_list", "10,100"},
    {"tls.hamiltonian_factor", "1"},

    {"evolution.dt", "0"},          // 0 = rule min(0.01/w0, 0.002/gamma)
    {"evolution.t_end", "5"},
    {"evolution.sample_every", "0"},  // 0 = aim for ~400 samples
    {"evolution.initial_fock", "0"},
    {"evolution.trace_tol", "1e-6"},
    {"evolution.local_error_tol", "1e-3"},
    {"evolution.store_states", "false"},

    {"fit.window_start", "1"},
    {"fit.window_end", "5"},

    {"output.format", "csv"},  // csv | json | both
    {"output.timestamp", "true"},

    {"verify.flip_dissipator_sign", "false"},
    {"verify.liouville_tol", "1e-12"},
    {"verify.dissipativity_tol", "1e-10"},
    {"verify.correlation_tol", "1e-12"},
    {"verify.detailed_balance_tol", "1e-8"},
    {"verify.slope_tol", "0.01"},
    {"verify.crosscheck_tol", "1e-2"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Mode mode_from_string(const std::string& name) {
  if (name == "coefficients") return Mode::coefficients;
  if (name == "sweep_temperature") return Mode::sweep_temperature;
  if (name == "evolve_bm") return Mode::evolve_bm;
  if (name == "evolve_joint") return Mode::evolve_joint;
  if (name == "evolve_adiabatic") return Mode::evolve_adiabatic;
  if (name == "fig2") return Mode::fig2;
  if (name == "fig3") return Mode::fig3;
  if (name == "verify") return Mode::verify;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::coefficients: return "coefficients";
    case Mode::sweep_temperature: return "sweep_temperature";
    case Mode::evolve_bm: return "evolve_bm";
    case Mode::evolve_joint: return "evolve_joint";
    case Mode::evolve_adiabatic: return "evolve_adiabatic";
    case Mode::fig2: return "fig2";
    case Mode::fig3: return "fig3";
    case Mode::verify: return "verify";
  }
  return "?";
}

ConfigMap::ConfigMap() {
  for (const auto& [key, value] : kDefaults) values_[key] = value;
}

void ConfigMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": key outside any [section]");
    set_override(section + "." + key, value);
  }
}

void ConfigMap::set_override(const std::string& dotted_key,
                             const std::string& value) {
  auto it = values_.find(dotted_key);
  if (it == values_.end())
    throw ConfigError("unknown configuration key '" + dotted_key + "'");
  it->second = value;
}

const std::string& ConfigMap::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

double ConfigMap::get_double(const std::string& key) const {
  const std::string& s = get(key);
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + s +
                      "' as a number");
  }
  if (pos != s.size())
    throw ConfigError("key '" + key + "': trailing junk in '" + s + "'");
  return v;
}

long ConfigMap::get_long(const std::string& key) const {
  const double v = get_double(key);
  const long l = static_cast<long>(v);
  if (static_cast<double>(l) != v)
    throw ConfigError("key '" + key + "': expected an integer");
  return l;
}

bool ConfigMap::get_bool(const std::string& key) const {
  const std::string& s = get(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + s + "'");
}

std::vector<double> ConfigMap::get_list(const std::string& key) const {
  const std::string& s = get(key);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': cannot parse list entry '" +
                        item + "'");
    }
  }
  if (out.empty())
    throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::string ConfigMap::canonical_text() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::string ConfigMap::hash() const {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oscspin::cli
