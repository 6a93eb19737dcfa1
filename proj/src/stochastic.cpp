#include "polyspace/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polyspace/exact.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polyspace {

namespace {

// Samples per chunk. Each chunk owns a derived RNG stream and its partial
// results are combined in chunk order, so estimates are bit-identical for
// any thread count.
constexpr std::int64_t kSampleChunk = 4096;

template <typename Result, typename Body>
std::vector<Result> run_chunked(std::int64_t n_items, std::uint64_t seed,
                                int threads, Body&& body) {
  const std::int64_t n_chunks = (n_items + kSampleChunk - 1) / kSampleChunk;
  std::vector<Result> results(static_cast<std::size_t>(n_chunks));
#ifdef _OPENMP
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(n_threads)
#else
  (void)threads;
#endif
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    const std::int64_t first = c * kSampleChunk;
    const std::int64_t count = std::min(kSampleChunk, n_items - first);
    Rng rng = Rng::for_chunk(seed, static_cast<std::uint64_t>(c));
    body(c, first, count, rng, results[static_cast<std::size_t>(c)]);
  }
  return results;
}

struct MomentSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

McEstimate estimate_from_moments(const std::vector<MomentSums>& chunks,
                                 std::int64_t n_samples, std::uint64_t seed) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& m : chunks) {
    sum += m.sum;
    sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double variance = std::max(0.0, sum_sq / n - mean * mean);
  McEstimate est;
  est.value = mean;
  est.std_error = n > 1 ? std::sqrt(variance / (n - 1)) : 0.0;
  est.n_samples = n_samples;
  est.seed = seed;
  return est;
}

void fill_samples(const RandomModel& model, std::vector<double>& buffer,
                  Rng& rng) {
  for (double& value : buffer) value = model.sample(rng);
}

int tau_identity_span(const std::vector<double>& l) {
  const int n = static_cast<int>(l.size());
  double s = l[n - 1];
  for (int i = 0; i + 1 < n; ++i) s -= l[i];
  if (s >= 0.0) return 0;
  for (int t = 1; t <= n - 1; ++t) {
    s += 2.0 * l[t - 1];
    if (s >= 0.0) return t;
  }
  return n - 1;
}

int tau_tilde_span(const std::vector<double>& l) {
  const int n = static_cast<int>(l.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (l[i] > l[i0]) i0 = i;
  }
  const double anchor = l[i0];
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += l[i];
  double s = 2.0 * anchor - total;  // anchor - sum of the other entries
  if (s >= 0.0) return 0;
  for (int t = 1; t <= n - 1; ++t) {
    const double v = (t - 1 == i0) ? l[n - 1] : l[t - 1];
    s += 2.0 * v;
    if (s >= 0.0) return t;
  }
  return n - 1;
}

// tau of (values, anchor) after an in-place Fisher-Yates shuffle of values.
int tau_shuffled(std::vector<double>& values, double anchor, double total,
                 Rng& rng) {
  const int m = static_cast<int>(values.size());
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(values[i], values[j]);
  }
  double s = 2.0 * anchor - total;
  if (s >= 0.0) return 0;
  for (int t = 1; t <= m; ++t) {
    s += 2.0 * values[t - 1];
    if (s >= 0.0) return t;
  }
  return m;
}

double wilson_low(double p, double n, double z) {
  const double denom = 1.0 + z * z / n;
  const double center = p + z * z / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return std::max(0.0, (center - half) / denom);
}

double wilson_high(double p, double n, double z) {
  const double denom = 1.0 + z * z / n;
  const double center = p + z * z / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return std::min(1.0, (center + half) / denom);
}

}  // namespace

RandomModel::RandomModel(Law law, double p0, double p1, double mean,
                         double variance)
    : law_(law), param0_(p0), param1_(p1), mean_(mean), variance_(variance) {}

RandomModel RandomModel::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a)) {
    throw Error(ErrorCode::ParseError, "uniform law requires 0 <= a < b");
  }
  return RandomModel(Law::Uniform, a, b, (a + b) / 2.0,
                     (b - a) * (b - a) / 12.0);
}

RandomModel RandomModel::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::ParseError, "exponential law requires rate > 0");
  }
  return RandomModel(Law::Exponential, rate, 0.0, 1.0 / rate,
                     1.0 / (rate * rate));
}

RandomModel RandomModel::shifted_exponential(double offset, double rate) {
  if (!(offset > 0.0) || !(rate > 0.0)) {
    throw Error(ErrorCode::ParseError,
                "shifted exponential law requires offset > 0 and rate > 0");
  }
  return RandomModel(Law::ShiftedExponential, offset, rate,
                     offset + 1.0 / rate, 1.0 / (rate * rate));
}

RandomModel RandomModel::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::istringstream in(spec.substr(colon + 1));
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        params.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad model parameter: " + token);
      }
    }
  }
  if (name == "uniform" && params.size() == 2) {
    return uniform(params[0], params[1]);
  }
  if ((name == "exp" || name == "exponential") && params.size() == 1) {
    return exponential(params[0]);
  }
  if (name == "shifted_exp" && params.size() == 2) {
    return shifted_exponential(params[0], params[1]);
  }
  throw Error(ErrorCode::ParseError,
              "unknown model spec '" + spec +
                  "' (expected uniform:a,b | exp:rate | shifted_exp:d,rate)");
}

double RandomModel::sigma() const { return std::sqrt(variance_); }

double RandomModel::sigma_tau() const { return sigma() / (2.0 * mean_); }

std::string RandomModel::describe() const {
  std::ostringstream out;
  switch (law_) {
    case Law::Uniform:
      out << "uniform:" << param0_ << "," << param1_;
      break;
    case Law::Exponential:
      out << "exp:" << param0_;
      break;
    case Law::ShiftedExponential:
      out << "shifted_exp:" << param0_ << "," << param1_;
      break;
  }
  return out.str();
}

double RandomModel::sample(Rng& rng) const {
  switch (law_) {
    case Law::Uniform:
      return param0_ + (param1_ - param0_) * rng.next_double();
    case Law::Exponential:
      return -std::log(1.0 - rng.next_double()) * mean_;
    case Law::ShiftedExponential:
      return param0_ - std::log(1.0 - rng.next_double()) / param1_;
  }
  return 0.0;
}

LengthVector sample_length_vector(const RandomModel& model, int n, Rng& rng) {
  std::vector<double> lengths(n);
  for (double& l : lengths) l = model.sample(rng);
  return LengthVector(std::move(lengths), ArithmeticMode::Float);
}

int stopping_time(const LengthVector& lv, std::span<const int> permutation) {
  const int n = lv.size();
  if (static_cast<int>(permutation.size()) != n - 1) {
    throw Error(ErrorCode::ParseError, "permutation must act on n-1 indices");
  }
  const auto& l = lv.lengths();
  double s = l[n - 1];
  for (int i = 0; i + 1 < n; ++i) s -= l[i];
  if (s >= 0.0) return 0;
  for (int t = 1; t <= n - 1; ++t) {
    s += 2.0 * l[permutation[t - 1]];
    if (s >= 0.0) return t;
  }
  return n - 1;
}

int stopping_time_identity(const LengthVector& lv) {
  return tau_identity_span(lv.lengths());
}

int stopping_time_tilde(const LengthVector& lv) {
  return tau_tilde_span(lv.lengths());
}

std::vector<int> random_permutation(int m, Rng& rng) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

int binomial_sample(int m, double q, Rng& rng) {
  if (m < 0 || m > 1000) {
    throw Error(ErrorCode::ParseError, "binomial sampler supports m <= 1000");
  }
  if (q <= 0.0) return 0;
  if (q >= 1.0) return m;
  const double u = rng.next_double();
  const double ratio = q / (1.0 - q);
  double pmf = std::pow(1.0 - q, m);
  double cdf = pmf;
  int k = 0;
  while (u > cdf && k < m) {
    pmf *= ratio * static_cast<double>(m - k) / static_cast<double>(k + 1);
    cdf += pmf;
    ++k;
  }
  return k;
}

McProfile mc_short_profile(const LengthVector& lv, ProfileKind kind,
                           std::int64_t n_permutations, std::uint64_t seed,
                           int threads) {
  if (n_permutations < 1) {
    throw Error(ErrorCode::ParseError, "need at least one permutation");
  }
  const int n = lv.size();

  // Effective arrangement: planar estimates run on l~, spatial on l itself;
  // in both the last entry is the anchor and the first n-1 get shuffled.
  std::vector<double> base(lv.lengths());
  if (kind == ProfileKind::Planar) {
    std::swap(base[lv.max_index()], base[n - 1]);
  }
  const double anchor = base[n - 1];
  const double total = std::accumulate(base.begin(), base.end(), 0.0);
  base.pop_back();

  using Histogram = std::vector<std::int64_t>;
  auto chunks = run_chunked<Histogram>(
      n_permutations, seed, threads,
      [&](std::int64_t, std::int64_t, std::int64_t count, Rng& rng,
          Histogram& hist) {
        hist.assign(n, 0);
        std::vector<double> values = base;
        for (std::int64_t i = 0; i < count; ++i) {
          ++hist[tau_shuffled(values, anchor, total, rng)];
        }
      });

  std::vector<std::int64_t> histogram(n, 0);
  for (const auto& h : chunks) {
    for (int i = 0; i < n; ++i) histogram[i] += h[i];
  }

  // hits[p] = #{tau > p}; the indicators are nested in p.
  McProfile profile;
  profile.kind = kind;
  profile.n_permutations = n_permutations;
  profile.seed = seed;
  profile.entries.resize(n);
  const double n_perm = static_cast<double>(n_permutations);
  std::int64_t above = n_permutations;
  for (int p = 0; p < n; ++p) {
    above -= histogram[p];
    const double proportion = static_cast<double>(above) / n_perm;
    const double weight = binomial_real(n - 1, p);
    McProfileEntry& entry = profile.entries[p];
    entry.proportion = proportion;
    entry.estimate = weight * proportion;
    entry.std_error =
        weight * std::sqrt(proportion * (1.0 - proportion) / n_perm);
    constexpr double z = 1.959963984540054;
    entry.wilson_low = wilson_low(proportion, n_perm, z);
    entry.wilson_high = wilson_high(proportion, n_perm, z);
  }
  return profile;
}

McEstimate mc_mean_betti(const RandomModel& model, int n, int p,
                         std::int64_t n_samples, std::uint64_t seed,
                         ProfileKind kind, int threads) {
  if (n_samples < 1) {
    throw Error(ErrorCode::ParseError, "need at least one sample");
  }
  const double w_low = binomial_real(n - 1, p);
  const double w_high = binomial_real(n - 1, p + 2);
  const double pow2 = std::ldexp(1.0, n - 1);

  auto chunks = run_chunked<MomentSums>(
      n_samples, seed, threads,
      [&](std::int64_t, std::int64_t, std::int64_t count, Rng& rng,
          MomentSums& moments) {
        std::vector<double> buffer(n);
        for (std::int64_t i = 0; i < count; ++i) {
          fill_samples(model, buffer, rng);
          double x = 0.0;
          if (kind == ProfileKind::Planar) {
            const int tau = tau_tilde_span(buffer);
            if (tau > p) x += w_low;
            if (tau > n - p - 3) x += w_high;
          } else {
            const int tau = tau_identity_span(buffer);
            const int k = binomial_sample(n - 1, 0.5, rng);
            if (tau > k) {
              if (k <= p) x += pow2;
              if (k >= n - p - 2 && k <= n - 2) x -= pow2;
            }
          }
          moments.sum += x;
          moments.sum_sq += x * x;
        }
      });
  return estimate_from_moments(chunks, n_samples, seed);
}

McEstimate mc_mean_poincare(const RandomModel& model, int n, double t,
                            std::int64_t n_samples, std::uint64_t seed,
                            ProfileKind kind, int threads) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::TNonpositive, "evaluation point t must be > 0");
  }
  if (n_samples < 1) {
    throw Error(ErrorCode::ParseError, "need at least one sample");
  }
  const bool at_one = std::abs(t - 1.0) < 1e-12;
  const double t_sq = t * t;
  const double q_planar = t / (1.0 + t);
  const double q_spatial = t_sq / (1.0 + t_sq);

  auto chunks = run_chunked<MomentSums>(
      n_samples, seed, threads,
      [&](std::int64_t, std::int64_t, std::int64_t count, Rng& rng,
          MomentSums& moments) {
        std::vector<double> buffer(n);
        for (std::int64_t i = 0; i < count; ++i) {
          fill_samples(model, buffer, rng);
          double x = 0.0;
          if (kind == ProfileKind::Planar) {
            const int tau = tau_tilde_span(buffer);
            const int k = binomial_sample(n - 1, q_planar, rng);
            if (tau > k) x += 1.0;
            if (tau > n - 1 - k) x += 1.0 / t_sq;
          } else if (!at_one) {
            const int tau = tau_identity_span(buffer);
            const int k = binomial_sample(n - 1, q_spatial, rng);
            double bracket = 0.0;
            if (tau > k) bracket += 1.0;
            if (tau > n - k) bracket -= 1.0 / t_sq;
            x = bracket / (1.0 - t_sq);
          } else {
            const int tau = tau_identity_span(buffer);
            const int k = binomial_sample(n - 1, 0.5, rng);
            if (tau > k) {
              x = (static_cast<double>(n - 2) - 2.0 * k) /
                  static_cast<double>(n);
            }
          }
          moments.sum += x;
          moments.sum_sq += x * x;
        }
      });
  return estimate_from_moments(chunks, n_samples, seed);
}

std::vector<int> tau_samples(const RandomModel& model, int n,
                             std::int64_t n_samples, std::uint64_t seed,
                             bool use_tilde, int threads) {
  std::vector<int> samples(static_cast<std::size_t>(n_samples));
  run_chunked<int>(n_samples, seed, threads,
                   [&](std::int64_t, std::int64_t first, std::int64_t count,
                       Rng& rng, int&) {
                     std::vector<double> buffer(n);
                     for (std::int64_t i = 0; i < count; ++i) {
                       fill_samples(model, buffer, rng);
                       samples[static_cast<std::size_t>(first + i)] =
                           use_tilde ? tau_tilde_span(buffer)
                                     : tau_identity_span(buffer);
                     }
                   });
  return samples;
}

}  // namespace polyspace
