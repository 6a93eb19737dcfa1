#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyspace/core.hpp"
#include "polyspace/stochastic.hpp"

namespace polyspace {

/// Declarative description of a verification experiment, read from a flat
/// key-value file (UTF-8, '#' comments, "key = value" lines).
///
/// Every "tol.<name>" key declares one pass/fail check evaluated by the
/// experiment; thresholds are data, not code. A config without tolerance
/// keys runs report-only and passes vacuously.
struct ExperimentConfig {
  std::string experiment;
  RandomModel model = RandomModel::uniform(0.0, 1.0);
  std::vector<int> n_grid;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 1;
  int threads = 0;

  // Regime parameters; experiments read the ones they need.
  std::optional<double> p_fraction;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<double> t;
  std::optional<int> nu;
  ProfileKind kind = ProfileKind::Planar;
  std::string regime;            // sub | super | critical
  std::string method = "mc";     // mc | exact (per-sample enumeration)
  std::int64_t max_samples = 0;  // cap for adaptive rare-event escalation

  std::string output;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> raw;

  bool has_tolerance(const std::string& name) const;
  double tolerance(const std::string& name) const;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
};

}  // namespace polyspace
