#include "polyspace/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace polyspace {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

const std::set<std::string> kKnownKeys = {
    "experiment", "model",   "n_grid", "samples", "seed",
    "threads",    "p",       "alpha",  "epsilon", "t",
    "nu",         "kind",    "regime", "method",  "max_samples",
    "output",
};

const std::set<std::string> kKnownExperiments = {
    "clt_tau",       "ldp_tau",        "betti_planar",
    "betti_spatial", "mean_poincare",  "higher_moments",
    "bivariate_independence",
};

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid,
                "bad numeric value for " + key + ": '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) {
    throw Error(ErrorCode::ConfigInvalid, key + " must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

bool ExperimentConfig::has_tolerance(const std::string& name) const {
  return tolerances.contains(name);
}

double ExperimentConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) {
    throw Error(ErrorCode::ConfigInvalid, "missing tolerance tol." + name);
  }
  return it->second;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigInvalid,
                  "line " + std::to_string(line_number) +
                      ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::ConfigInvalid,
                  "line " + std::to_string(line_number) + ": empty key/value");
    }
    if (config.raw.contains(key)) {
      throw Error(ErrorCode::ConfigInvalid, "duplicate key " + key);
    }
    config.raw[key] = value;

    if (key.starts_with("tol.")) {
      config.tolerances[key.substr(4)] = parse_double(key, value);
      continue;
    }
    if (!kKnownKeys.contains(key)) {
      throw Error(ErrorCode::ConfigInvalid, "unknown key " + key);
    }
    if (key == "experiment") {
      config.experiment = value;
    } else if (key == "model") {
      try {
        config.model = RandomModel::parse(value);
      } catch (const Error& e) {
        throw Error(ErrorCode::ConfigInvalid, e.what());
      }
    } else if (key == "n_grid") {
      std::istringstream grid(value);
      std::string token;
      while (std::getline(grid, token, ',')) {
        config.n_grid.push_back(
            static_cast<int>(parse_int("n_grid", trim(token))));
      }
    } else if (key == "samples") {
      config.n_samples = parse_int(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "threads") {
      config.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "p") {
      config.p_fraction = parse_double(key, value);
    } else if (key == "alpha") {
      config.alpha = parse_double(key, value);
    } else if (key == "epsilon") {
      config.epsilon = parse_double(key, value);
    } else if (key == "t") {
      config.t = parse_double(key, value);
    } else if (key == "nu") {
      config.nu = static_cast<int>(parse_int(key, value));
    } else if (key == "kind") {
      if (value == "planar") {
        config.kind = ProfileKind::Planar;
      } else if (value == "spatial") {
        config.kind = ProfileKind::Spatial;
      } else {
        throw Error(ErrorCode::ConfigInvalid, "kind must be planar|spatial");
      }
    } else if (key == "regime") {
      config.regime = value;
    } else if (key == "method") {
      if (value != "mc" && value != "exact") {
        throw Error(ErrorCode::ConfigInvalid, "method must be mc|exact");
      }
      config.method = value;
    } else if (key == "max_samples") {
      config.max_samples = parse_int(key, value);
    } else if (key == "output") {
      config.output = value;
    }
  }

  if (!kKnownExperiments.contains(config.experiment)) {
    throw Error(ErrorCode::ConfigInvalid,
                "unknown experiment '" + config.experiment + "'");
  }
  if (config.n_grid.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "n_grid is required");
  }
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 3) {
      throw Error(ErrorCode::ConfigInvalid, "n_grid entries must be >= 3");
    }
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw Error(ErrorCode::ConfigInvalid,
                  "n_grid must be strictly increasing");
    }
  }
  if (config.n_samples < 100) {
    throw Error(ErrorCode::ConfigInvalid, "samples must be >= 100");
  }
  if (config.max_samples == 0) config.max_samples = 64 * config.n_samples;
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace polyspace
