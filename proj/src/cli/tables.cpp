#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "json.hpp"
#include "oscspin/cli.hpp"

namespace oscspin::cli {

namespace {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_line() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

std::string ResultTable::to_csv(bool with_timestamp) const {
  std::string out;
  for (const auto& [key, value] : provenance)
    out += "# " + key + " = " + value + "\n";
  if (with_timestamp) out += "# generated_at = " + timestamp_line() + "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ",";
    out += columns[c];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += format_double(row[c]);
    }
    out += "\n";
  }
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::json j;
  nlohmann::json prov = nlohmann::json::object();
  for (const auto& [key, value] : provenance) prov[key] = value;
  j["name"] = name;
  j["provenance"] = prov;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_table(const ScenarioConfig& cfg,
                                     const ResultTable& table) {
  const std::string format = cfg.config.get("output.format");
  if (format != "csv" && format != "json" && format != "both")
    throw ConfigError("output.format must be csv, json or both");
  const bool with_timestamp =
      cfg.timestamp && cfg.config.get_bool("output.timestamp");

  std::filesystem::create_directories(cfg.out_dir);
  std::vector<std::string> written;
  if (format == "csv" || format == "both") {
    const std::string path = cfg.out_dir + "/" + table.name + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << table.to_csv(with_timestamp);
    written.push_back(path);
  }
  if (format == "json" || format == "both") {
    const std::string path = cfg.out_dir + "/" + table.name + ".json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << table.to_json();
    written.push_back(path);
  }
  return written;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  unsigned n = jobs > 0 ? static_cast<unsigned>(jobs)
                        : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(count));
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n);
  for (unsigned w = 0; w < n; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += n) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace oscspin::cli
