#include "polyspace/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polyspace/core.hpp"

namespace polyspace {

using nlohmann::json;

std::string ExperimentResult::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["invocation"] = experiment;
  // 64-bit values go out as decimal strings so downstream JSON consumers
  // with 53-bit integers cannot truncate them.
  j["seed"] = std::to_string(seed);
  j["config"] = json::object();
  for (const auto& [key, value] : config_echo) j["config"][key] = value;
  j["results"] = json::array();
  for (const auto& row : rows) {
    json r;
    r["n"] = row.n;
    r["statistic"] = row.statistic;
    r["value"] = row.value;
    if (row.has_std_error) r["std_error"] = row.std_error;
    j["results"].push_back(std::move(r));
  }
  j["diagnostics"] = json::array();
  for (const auto& diag : diagnostics) {
    json d;
    d["name"] = diag.name;
    d["value"] = diag.value;
    d["threshold"] = diag.threshold;
    d["pass"] = diag.pass;
    j["diagnostics"].push_back(std::move(d));
  }
  j["flags"] = flags;
  j["pass"] = pass;
  j["wall_ms"] = wall_ms;
  return j.dump(2);
}

ExperimentResult ExperimentResult::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("schema_version", 0) != 1) {
    throw Error(ErrorCode::ParseError, "not a schema_version 1 result");
  }
  ExperimentResult result;
  result.experiment = j.value("invocation", "");
  result.seed = std::stoull(j.value("seed", "0"));
  const json config = j.value("config", json::object());
  for (const auto& [key, value] : config.items()) {
    result.config_echo[key] = value.get<std::string>();
  }
  for (const auto& r : j.value("results", json::array())) {
    ResultRow row;
    row.n = r.value("n", 0);
    row.statistic = r.value("statistic", "");
    row.value = r.value("value", 0.0);
    row.has_std_error = r.contains("std_error");
    if (row.has_std_error) row.std_error = r["std_error"].get<double>();
    result.rows.push_back(std::move(row));
  }
  for (const auto& d : j.value("diagnostics", json::array())) {
    Diagnostic diag;
    diag.name = d.value("name", "");
    diag.value = d.value("value", 0.0);
    diag.threshold = d.value("threshold", 0.0);
    diag.pass = d.value("pass", false);
    result.diagnostics.push_back(std::move(diag));
  }
  result.flags = j.value("flags", std::vector<std::string>{});
  result.pass = j.value("pass", false);
  result.wall_ms = j.value("wall_ms", 0.0);
  return result;
}

std::string ExperimentResult::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "n,statistic,value,std_error\n";
  for (const auto& row : rows) {
    out << row.n << ',' << row.statistic << ',' << row.value << ',';
    if (row.has_std_error) out << row.std_error;
    out << '\n';
  }
  for (const auto& diag : diagnostics) {
    out << ",diag:" << diag.name << ',' << diag.value << ",\n";
  }
  return out.str();
}

void ExperimentResult::write_files(const std::string& output_prefix) const {
  const std::filesystem::path prefix(output_prefix);
  if (prefix.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(prefix.parent_path(), ec);
  }
  for (const char* extension : {".json", ".csv"}) {
    std::ofstream out(output_prefix + extension);
    if (!out) {
      throw Error(ErrorCode::IoError,
                  "cannot write " + output_prefix + extension);
    }
    out << (extension[1] == 'j' ? to_json() : to_csv());
  }
}

}  // namespace polyspace
