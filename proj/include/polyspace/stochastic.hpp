#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polyspace/core.hpp"
#include "polyspace/rng.hpp"

namespace polyspace {

/// A diffuse sampling law on (0, inf) with finite exponential moment, so the
/// product measure it induces satisfies the standing hypothesis on random
/// length vectors. Known mean and variance feed the limit-law diagnostics.
class RandomModel {
 public:
  enum class Law { Uniform, Exponential, ShiftedExponential };

  static RandomModel uniform(double a, double b);
  static RandomModel exponential(double rate);
  static RandomModel shifted_exponential(double offset, double rate);

  /// Parses "uniform:a,b", "exp:rate" or "shifted_exp:offset,rate".
  static RandomModel parse(const std::string& spec);

  Law law() const { return law_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double sigma() const;
  /// sigma / (2 mean): the CLT scale of the stopping time.
  double sigma_tau() const;
  std::string describe() const;

  double sample(Rng& rng) const;

 private:
  RandomModel(Law law, double p0, double p1, double mean, double variance);

  Law law_;
  double param0_;
  double param1_;
  double mean_;
  double variance_;
};

/// n i.i.d. draws from the model, in Float mode.
LengthVector sample_length_vector(const RandomModel& model, int n, Rng& rng);

/// Minimal 0 <= t <= n-1 with sum_{i<=t} l_sigma(i) + l_n >= sum_{i>t}
/// l_sigma(i); the permutation acts on the first n-1 indices (0-based).
int stopping_time(const LengthVector& lv, std::span<const int> permutation);
int stopping_time_identity(const LengthVector& lv);
/// tau~ = stopping time of l~ under the identity permutation; <= n-2.
int stopping_time_tilde(const LengthVector& lv);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// One entry of a Monte Carlo subset profile: C(n-1,p) * Pr(tau > p) with
/// plug-in binomial standard errors and a Wilson interval on the proportion.
struct McProfileEntry {
  double estimate = 0.0;
  double std_error = 0.0;
  double proportion = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};

struct McProfile {
  ProfileKind kind = ProfileKind::Planar;
  std::vector<McProfileEntry> entries;
  std::int64_t n_permutations = 0;
  std::uint64_t seed = 0;
};

/// Estimates a_p (planar, on l~) or a^_p (spatial, on l) over uniformly
/// random permutations; one permutation yields the whole nested indicator
/// vector {tau > p}.
McProfile mc_short_profile(const LengthVector& lv, ProfileKind kind,
                           std::int64_t n_permutations, std::uint64_t seed,
                           int threads = 0);

/// Mean Betti number estimator. Planar: C(n-1,p) 1{tau~ > p} +
/// C(n-1,p+2) 1{tau~ > n-p-3} with one tau~ per sampled vector. Spatial:
/// the 2^(n-1)-scaled paired-indicator form for b_2p with one binomial draw.
McEstimate mc_mean_betti(const RandomModel& model, int n, int p,
                         std::int64_t n_samples, std::uint64_t seed,
                         ProfileKind kind = ProfileKind::Planar,
                         int threads = 0);

/// Normalized mean Poincare value at t > 0. Planar estimates
/// p(t) / (1+t)^(n-1); spatial t != 1 estimates p(t) / (1+t^2)^(n-1);
/// spatial t == 1 estimates p(1) / (n 2^(n-1)).
McEstimate mc_mean_poincare(const RandomModel& model, int n, double t,
                            std::int64_t n_samples, std::uint64_t seed,
                            ProfileKind kind, int threads = 0);

/// i.i.d. samples of tau (identity permutation on fresh vectors) or tau~.
std::vector<int> tau_samples(const RandomModel& model, int n,
                             std::int64_t n_samples, std::uint64_t seed,
                             bool use_tilde, int threads = 0);

/// Uniform random permutation of {0, .., m-1} by Fisher-Yates.
std::vector<int> random_permutation(int m, Rng& rng);

/// Exact inversion sampling of Binomial(m, q); m <= 1000.
int binomial_sample(int m, double q, Rng& rng);

}  // namespace polyspace
