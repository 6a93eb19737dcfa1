#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyspace/asymptotics.hpp"
#include "polyspace/config.hpp"
#include "polyspace/core.hpp"
#include "polyspace/exact.hpp"
#include "polyspace/report.hpp"
#include "polyspace/stochastic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace polyspace;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 2;
    case ErrorCode::ConfigInvalid: return 3;
    case ErrorCode::CapExceeded: return 4;
    case ErrorCode::NonGeneric: return 5;
    case ErrorCode::ToleranceAmbiguous: return 6;
    case ErrorCode::EvenN: return 7;
    case ErrorCode::TNonpositive: return 8;
    case ErrorCode::DivisionRemainder: return 9;
    case ErrorCode::IoError: return 10;
  }
  return 1;
}

// Comma-separated integers select exact mode, decimals float mode; a mix of
// the two is rejected so the arithmetic mode is always explicit.
LengthVector parse_lengths(const std::string& text) {
  std::vector<double> values;
  bool any_decimal = false;
  bool any_integer = false;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) {
      throw Error(ErrorCode::ParseError, "empty length entry");
    }
    (token.find('.') != std::string::npos ? any_decimal : any_integer) = true;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad length '" + token + "'");
    }
  }
  if (any_decimal && any_integer) {
    throw Error(ErrorCode::ParseError,
                "mixed integer/decimal lengths; use one arithmetic mode");
  }
  return LengthVector(std::move(values), any_decimal ? ArithmeticMode::Float
                                                     : ArithmeticMode::Exact);
}

json int_strings(const std::vector<std::int64_t>& values) {
  json array = json::array();
  for (std::int64_t v : values) array.push_back(std::to_string(v));
  return array;
}

void write_csv_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
}

struct ExactArgs {
  std::string lengths;
  int equilateral_n = 0;
  std::string kind = "planar";
  int cap = kDefaultEnumerationCap;
  bool as_json = false;
  std::string csv_path;
};

ProfileKind parse_kind(const std::string& kind) {
  if (kind == "planar") return ProfileKind::Planar;
  if (kind == "spatial") return ProfileKind::Spatial;
  throw Error(ErrorCode::ParseError, "kind must be planar|spatial");
}

int run_exact(const ExactArgs& args) {
  if (args.lengths.empty() == (args.equilateral_n == 0)) {
    throw Error(ErrorCode::ParseError,
                "exactly one of --lengths / --equilateral is required");
  }
  const LengthVector lv = args.lengths.empty()
                              ? LengthVector::equilateral(args.equilateral_n)
                              : parse_lengths(args.lengths);
  const ProfileKind kind = parse_kind(args.kind);
  EnumerationOptions options;
  options.cap = args.cap;

  const bool generic = is_generic(lv, args.cap);
  const SubsetProfile profile = short_profile(lv, kind, options);
  const int n = lv.size();
  BettiProfile betti;
  PoincarePolynomial poincare;
  if (kind == ProfileKind::Planar) {
    betti = betti_from_profile(profile, n);
    poincare.kind = ProfileKind::Planar;
    poincare.coefficients = betti.values;
  } else {
    std::int64_t partial = 0;
    betti.kind = ProfileKind::Spatial;
    betti.values.resize(n - 2);
    for (int p = 0; p <= n - 3; ++p) {
      partial += profile.counts[p] - profile.counts[n - p - 2];
      betti.values[p] = partial;
    }
    poincare = spatial_poincare_from_profile(profile, n);
  }
  const std::int64_t total = total_betti(betti);

  if (args.as_json) {
    json j;
    j["schema_version"] = 1;
    j["invocation"] = "exact";
    j["kind"] = args.kind;
    j["mode"] = lv.mode() == ArithmeticMode::Exact ? "exact" : "float";
    j["lengths"] = lv.lengths();
    j["generic"] = generic;
    j["profile"]["counts"] = int_strings(profile.counts);
    j["profile"]["median_counts"] = int_strings(profile.median_counts);
    j["betti"] = int_strings(betti.values);
    j["poincare"] = int_strings(poincare.coefficients);
    j["total"] = std::to_string(total);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "n:        " << n << "\n";
    std::cout << "kind:     " << args.kind << "\n";
    std::cout << "generic:  " << (generic ? "yes" : "no") << "\n";
    std::cout << "counts:  ";
    for (auto c : profile.counts) std::cout << ' ' << c;
    std::cout << "\nmedians: ";
    for (auto c : profile.median_counts) std::cout << ' ' << c;
    std::cout << "\nbetti:   ";
    for (auto b : betti.values) std::cout << ' ' << b;
    std::cout << "\npoincare: " << poincare.to_string() << "\n";
    std::cout << "total:    " << total << "\n";
  }
  if (!args.csv_path.empty()) {
    std::ostringstream csv;
    csv << "index,count,median_count,betti\n";
    for (int i = 0; i < n; ++i) {
      csv << i << ',' << profile.counts[i] << ',' << profile.median_counts[i]
          << ',' << (i <= n - 3 ? std::to_string(betti.values[i]) : "")
          << '\n';
    }
    write_csv_file(args.csv_path, csv.str());
  }
  return 0;
}

struct EquilateralArgs {
  int n = 0;
  std::string kind = "planar";
  bool as_json = false;
};

int run_equilateral(const EquilateralArgs& args) {
  if (parse_kind(args.kind) == ProfileKind::Planar) {
    const EquilateralClosedForm form = equilateral_planar(args.n);
    if (args.as_json) {
      json j;
      j["schema_version"] = 1;
      j["invocation"] = "equilateral";
      j["kind"] = "planar";
      j["n"] = form.n;
      j["r"] = form.r;
      j["betti"] = int_strings(form.betti.values);
      j["total"] = std::to_string(form.total);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "n: " << form.n << "  r: " << form.r << "\nbetti: ";
      for (auto b : form.betti.values) std::cout << ' ' << b;
      std::cout << "\ntotal (B_n): " << form.total << "\n";
    }
  } else {
    const std::int64_t total = equilateral_spatial_total(args.n);
    if (args.as_json) {
      json j;
      j["schema_version"] = 1;
      j["invocation"] = "equilateral";
      j["kind"] = "spatial";
      j["n"] = args.n;
      j["total"] = std::to_string(total);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "n: " << args.n << "\ntotal: " << total << "\n";
    }
  }
  return 0;
}

struct McArgs {
  std::string lengths;
  std::string model;
  std::string kind = "planar";
  int n = 0;
  double t = 0.0;
  int p = -1;
  std::int64_t perms = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  bool as_json = false;
};

int run_mc(const McArgs& args) {
  const ProfileKind kind = parse_kind(args.kind);
  if (!args.lengths.empty()) {
    if (args.perms <= 0) {
      throw Error(ErrorCode::ParseError, "--lengths mode requires --perms");
    }
    const LengthVector lv = parse_lengths(args.lengths);
    const McProfile profile =
        mc_short_profile(lv, kind, args.perms, args.seed);
    if (args.as_json) {
      json j;
      j["schema_version"] = 1;
      j["invocation"] = "mc_short_profile";
      j["kind"] = args.kind;
      j["seed"] = std::to_string(args.seed);
      j["permutations"] = std::to_string(args.perms);
      j["entries"] = json::array();
      for (const auto& e : profile.entries) {
        json entry;
        entry["estimate"] = e.estimate;
        entry["std_error"] = e.std_error;
        entry["proportion"] = e.proportion;
        entry["wilson_low"] = e.wilson_low;
        entry["wilson_high"] = e.wilson_high;
        j["entries"].push_back(std::move(entry));
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "seed: " << args.seed << "  permutations: " << args.perms
                << "\n";
      std::printf("%4s %14s %12s %10s %19s\n", "p", "estimate", "std_error",
                  "prop", "wilson95");
      for (std::size_t p = 0; p < profile.entries.size(); ++p) {
        const auto& e = profile.entries[p];
        std::printf("%4zu %14.4f %12.4f %10.6f [%8.6f, %8.6f]\n", p,
                    e.estimate, e.std_error, e.proportion, e.wilson_low,
                    e.wilson_high);
      }
    }
    return 0;
  }

  if (args.model.empty() || args.n < 3) {
    throw Error(ErrorCode::ParseError,
                "model mode requires --model and --n (>= 3)");
  }
  if (args.samples <= 0) {
    throw Error(ErrorCode::ParseError, "model mode requires --samples");
  }
  const RandomModel model = RandomModel::parse(args.model);
  McEstimate estimate;
  std::string what;
  if (args.p >= 0) {
    estimate = mc_mean_betti(model, args.n, args.p, args.samples, args.seed,
                             kind);
    what = "mean_betti";
  } else if (args.t > 0.0) {
    estimate = mc_mean_poincare(model, args.n, args.t, args.samples, args.seed,
                                kind);
    what = "mean_poincare_normalized";
  } else {
    throw Error(ErrorCode::ParseError, "model mode requires --t or --p");
  }
  if (args.as_json) {
    json j;
    j["schema_version"] = 1;
    j["invocation"] = what;
    j["kind"] = args.kind;
    j["model"] = model.describe();
    j["n"] = args.n;
    j["seed"] = std::to_string(args.seed);
    j["samples"] = std::to_string(estimate.n_samples);
    j["value"] = estimate.value;
    j["std_error"] = estimate.std_error;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << what << " (" << args.kind << ", n=" << args.n
              << ", model=" << model.describe() << ", seed=" << args.seed
              << ")\n";
    std::printf("value: %.8f  std_error: %.8f  samples: %lld\n",
                estimate.value, estimate.std_error,
                static_cast<long long>(estimate.n_samples));
  }
  return 0;
}

struct TauArgs {
  std::string model = "uniform:0,1";
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  bool tilde = false;
  bool as_json = false;
};

int run_tau_stats(const TauArgs& args) {
  if (args.n < 3 || args.samples <= 0) {
    throw Error(ErrorCode::ParseError, "tau-stats requires --n and --samples");
  }
  const RandomModel model = RandomModel::parse(args.model);
  const auto taus =
      tau_samples(model, args.n, args.samples, args.seed, args.tilde);
  double mean = 0.0;
  int lo = taus[0];
  int hi = taus[0];
  for (int t : taus) {
    mean += t;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  mean /= double(taus.size());
  double var = 0.0;
  for (int t : taus) var += (t - mean) * (t - mean);
  var /= double(taus.size() - 1);
  if (args.as_json) {
    json j;
    j["schema_version"] = 1;
    j["invocation"] = "tau_stats";
    j["model"] = model.describe();
    j["n"] = args.n;
    j["tilde"] = args.tilde;
    j["seed"] = std::to_string(args.seed);
    j["samples"] = std::to_string(args.samples);
    j["mean"] = mean;
    j["variance"] = var;
    j["min"] = lo;
    j["max"] = hi;
    j["sigma_tau"] = model.sigma_tau();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (args.tilde ? "tau~" : "tau") << " over " << args.samples
              << " samples (n=" << args.n << ", model=" << model.describe()
              << ", seed=" << args.seed << ")\n";
    std::printf("mean: %.4f  variance: %.4f  range: [%d, %d]\n", mean, var,
                lo, hi);
    std::printf("mean/n: %.4f  var/(n sigma_tau^2): %.4f\n", mean / args.n,
                var / (args.n * model.sigma_tau() * model.sigma_tau()));
  }
  return 0;
}

int run_verify(const std::string& config_path) {
  const ExperimentConfig config = ExperimentConfig::load(config_path);
  if (config.output.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "verify requires output = <prefix>");
  }
  const ExperimentResult result = run_experiment(config);
  result.write_files(config.output);
  std::cout << "experiment: " << result.experiment << "\n";
  for (const auto& diag : result.diagnostics) {
    std::printf("  [%s] %-28s value=%.6g threshold=%.6g\n",
                diag.pass ? "ok" : "FAIL", diag.name.c_str(), diag.value,
                diag.threshold);
  }
  for (const auto& flag : result.flags) std::cout << "  flag: " << flag << "\n";
  std::cout << "wrote " << config.output << ".json / .csv\n";
  std::cout << (result.pass ? "PASS" : "FAIL") << "\n";
  return result.pass ? 0 : 1;
}

struct CalphaArgs {
  double alpha = 0.0;
  std::string model = "uniform:0,1";
  bool as_json = false;
};

int run_calpha(const CalphaArgs& args) {
  const RandomModel model = RandomModel::parse(args.model);
  const double value = compute_c_alpha(args.alpha, model);
  if (args.as_json) {
    json j;
    j["schema_version"] = 1;
    j["invocation"] = "calpha";
    j["alpha"] = args.alpha;
    j["model"] = model.describe();
    j["value"] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("C(%g) = %.12f  (model %s, m/sigma = %.6f)\n", args.alpha,
                value, model.describe().c_str(),
                model.mean() / model.sigma());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polyspace: topological invariants of random polygon spaces and "
      "verification of their limit laws"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (default: all)");

  ExactArgs exact_args;
  auto* exact = app.add_subcommand(
      "exact", "exact profiles, Betti numbers and Poincare polynomials");
  exact->add_option("--lengths", exact_args.lengths,
                    "comma-separated lengths (integers: exact mode)");
  exact->add_option("--equilateral", exact_args.equilateral_n,
                    "use n equal sides");
  exact->add_option("--kind", exact_args.kind, "planar|spatial");
  exact->add_option("--cap", exact_args.cap, "enumeration cap override");
  exact->add_flag("--json", exact_args.as_json, "JSON output");
  exact->add_option("--csv", exact_args.csv_path, "write CSV to this path");

  EquilateralArgs eq_args;
  auto* equilateral =
      app.add_subcommand("equilateral", "closed forms for equal sides");
  equilateral->add_option("--n", eq_args.n, "number of sides (odd)")
      ->required();
  equilateral->add_option("--kind", eq_args.kind, "planar|spatial");
  equilateral->add_flag("--json", eq_args.as_json, "JSON output");

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimators");
  mc->add_option("--lengths", mc_args.lengths, "profile estimation target");
  mc->add_option("--model", mc_args.model, "uniform:a,b | exp:r | "
                                           "shifted_exp:d,r");
  mc->add_option("--kind", mc_args.kind, "planar|spatial");
  mc->add_option("--n", mc_args.n, "number of sides (model mode)");
  mc->add_option("--t", mc_args.t, "Poincare evaluation point");
  mc->add_option("--p", mc_args.p, "Betti dimension (mean-betti mode)");
  mc->add_option("--perms", mc_args.perms, "number of permutations");
  mc->add_option("--samples", mc_args.samples, "number of samples");
  mc->add_option("--seed", mc_args.seed, "RNG seed");
  mc->add_flag("--json", mc_args.as_json, "JSON output");

  TauArgs tau_args;
  auto* tau = app.add_subcommand("tau-stats", "stopping-time sampling");
  tau->add_option("--model", tau_args.model, "sampling law");
  tau->add_option("--n", tau_args.n, "number of sides")->required();
  tau->add_option("--samples", tau_args.samples, "number of samples")
      ->required();
  tau->add_option("--seed", tau_args.seed, "RNG seed");
  tau->add_flag("--tilde", tau_args.tilde, "sample tau~ instead of tau");
  tau->add_flag("--json", tau_args.as_json, "JSON output");

  std::string config_path;
  auto* verify =
      app.add_subcommand("verify", "run a declarative experiment config");
  verify->add_option("--config", config_path, "config file path")->required();

  CalphaArgs calpha_args;
  auto* calpha = app.add_subcommand("calpha", "critical-regime constant");
  calpha->add_option("--alpha", calpha_args.alpha, "offset alpha")->required();
  calpha->add_option("--model", calpha_args.model, "sampling law");
  calpha->add_flag("--json", calpha_args.as_json, "JSON output");

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (exact->parsed()) return run_exact(exact_args);
    if (equilateral->parsed()) return run_equilateral(eq_args);
    if (mc->parsed()) return run_mc(mc_args);
    if (tau->parsed()) return run_tau_stats(tau_args);
    if (verify->parsed()) return run_verify(config_path);
    if (calpha->parsed()) return run_calpha(calpha_args);
  } catch (const polyspace::Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
