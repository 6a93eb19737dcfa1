#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace polyspace {

/// One (n, statistic) value of an experiment.
struct ResultRow {
  int n = 0;
  std::string statistic;
  double value = 0.0;
  double std_error = 0.0;
  bool has_std_error = false;
};

/// A declared tolerance check with its measured value.
struct Diagnostic {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Persisted record of a verification run. Serializes losslessly to JSON
/// (schema_version 1) and to a flat CSV with one row per (n, statistic).
struct ExperimentResult {
  std::string experiment;
  std::map<std::string, std::string> config_echo;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> flags;
  bool pass = true;
  double wall_ms = 0.0;

  std::string to_json() const;
  static ExperimentResult from_json(const std::string& text);

  std::string to_csv() const;

  void write_files(const std::string& output_prefix) const;
};

}  // namespace polyspace
