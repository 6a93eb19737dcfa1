#include "polyspace/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polyspace {

namespace {

// Masks per parallel chunk. Float-mode sums are recomputed from scratch at
// each chunk start, so the incremental drift stays far below the median
// tolerance band and results do not depend on the partitioning.
constexpr std::uint64_t kChunkBits = 12;
constexpr std::uint64_t kChunkMasks = std::uint64_t{1} << kChunkBits;

struct ProfileAccumulator {
  std::vector<std::int64_t> short_counts;
  std::vector<std::int64_t> median_counts;
  bool median_seen = false;
  bool ambiguous_seen = false;

  explicit ProfileAccumulator(int n)
      : short_counts(n, 0), median_counts(n, 0) {}

  void merge(const ProfileAccumulator& other) {
    for (std::size_t i = 0; i < short_counts.size(); ++i) {
      short_counts[i] += other.short_counts[i];
      median_counts[i] += other.median_counts[i];
    }
    median_seen |= other.median_seen;
    ambiguous_seen |= other.ambiguous_seen;
  }
};

// Non-anchor values in index order; the anchor value is added separately.
template <typename T>
struct EnumerationInput {
  std::vector<T> values;
  T anchor_value;
  T total;
};

template <typename T>
EnumerationInput<T> make_input(const std::vector<T>& lengths, int anchor) {
  EnumerationInput<T> input;
  input.values.reserve(lengths.size() - 1);
  input.total = T{0};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    input.total += lengths[i];
    if (static_cast<int>(i) != anchor) input.values.push_back(lengths[i]);
  }
  input.anchor_value = lengths[anchor];
  return input;
}

// Walks masks [first, last) in Gray-code order, classifying the signed sum
// s = sum(J) - sum(complement) of J = {anchor} + selected values.
// Exact integers: s == 0 is a median. Floats: |s| within the tolerance
// bands is a median or ambiguous.
template <typename T>
void enumerate_range(const EnumerationInput<T>& input, std::uint64_t first,
                     std::uint64_t last, double tol_median,
                     double tol_ambiguous, ProfileAccumulator& acc) {
  const int m = static_cast<int>(input.values.size());
  std::uint64_t gray = first ^ (first >> 1);
  T s = input.anchor_value - (input.total - input.anchor_value);
  int cardinality = 0;
  for (int i = 0; i < m; ++i) {
    if ((gray >> i) & 1) {
      s += 2 * input.values[i];
      ++cardinality;
    }
  }
  for (std::uint64_t mask = first; mask < last; ++mask) {
    if (mask != first) {
      const int bit = std::countr_zero(mask);
      gray ^= std::uint64_t{1} << bit;
      if ((gray >> bit) & 1) {
        s += 2 * input.values[bit];
        ++cardinality;
      } else {
        s -= 2 * input.values[bit];
        --cardinality;
      }
    }
    if constexpr (std::is_integral_v<T>) {
      if (s < 0) {
        ++acc.short_counts[cardinality];
      } else if (s == 0) {
        ++acc.median_counts[cardinality];
        acc.median_seen = true;
      }
    } else {
      const double mag = std::abs(s);
      if (mag <= tol_median) {
        ++acc.median_counts[cardinality];
        acc.median_seen = true;
      } else if (mag <= tol_ambiguous) {
        acc.ambiguous_seen = true;
      } else if (s < 0) {
        ++acc.short_counts[cardinality];
      }
    }
  }
}

template <typename T>
ProfileAccumulator enumerate_profile(const EnumerationInput<T>& input, int n,
                                     double tol_median, double tol_ambiguous,
                                     const EnumerationOptions& options) {
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  ProfileAccumulator total_acc(n);
  if (options.serial || masks <= kChunkMasks) {
    enumerate_range(input, 0, masks, tol_median, tol_ambiguous, total_acc);
    return total_acc;
  }

  const std::int64_t chunks =
      static_cast<std::int64_t>((masks + kChunkMasks - 1) / kChunkMasks);
  std::vector<ProfileAccumulator> partials;
#ifdef _OPENMP
  const int max_threads =
      options.threads > 0 ? options.threads : omp_get_max_threads();
  partials.assign(max_threads, ProfileAccumulator(n));
#pragma omp parallel for schedule(static) num_threads(max_threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkMasks;
    const std::uint64_t last = std::min(masks, first + kChunkMasks);
    enumerate_range(input, first, last, tol_median, tol_ambiguous,
                    partials[omp_get_thread_num()]);
  }
#else
  partials.assign(1, ProfileAccumulator(n));
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkMasks;
    const std::uint64_t last = std::min(masks, first + kChunkMasks);
    enumerate_range(input, first, last, tol_median, tol_ambiguous,
                    partials[0]);
  }
#endif
  for (const auto& p : partials) total_acc.merge(p);
  return total_acc;
}

}  // namespace

SubsetProfile short_profile(const LengthVector& lv, ProfileKind kind,
                            const EnumerationOptions& options) {
  const int n = lv.size();
  if (n > options.cap) {
    throw Error(ErrorCode::CapExceeded,
                "n=" + std::to_string(n) + " exceeds enumeration cap " +
                    std::to_string(options.cap));
  }
  const int anchor = kind == ProfileKind::Planar ? lv.max_index() : n - 1;

  ProfileAccumulator acc(n);
  if (lv.mode() == ArithmeticMode::Exact) {
    acc = enumerate_profile(make_input(lv.integers(), anchor), n, 0.0, 0.0,
                            options);
  } else {
    const double total = lv.total();
    acc = enumerate_profile(make_input(lv.lengths(), anchor), n,
                            kMedianTol * total, kAmbiguousTol * total,
                            options);
  }
  if (acc.ambiguous_seen && !acc.median_seen) {
    throw Error(ErrorCode::ToleranceAmbiguous,
                "signed subset sum falls in the ambiguity band; "
                "use exact mode or rescale");
  }
  if (kind == ProfileKind::Spatial && acc.median_seen) {
    throw Error(ErrorCode::NonGeneric,
                "spatial profile requires a generic length vector");
  }

  SubsetProfile profile;
  profile.kind = kind;
  profile.counts = std::move(acc.short_counts);
  if (kind == ProfileKind::Planar) {
    profile.median_counts = std::move(acc.median_counts);
  } else {
    profile.median_counts.assign(n, 0);
  }
  return profile;
}

SubsetProfile short_profile_planar(const LengthVector& lv,
                                   const EnumerationOptions& options) {
  return short_profile(lv, ProfileKind::Planar, options);
}

SubsetProfile short_profile_spatial(const LengthVector& lv,
                                    const EnumerationOptions& options) {
  return short_profile(lv, ProfileKind::Spatial, options);
}

BettiProfile betti_from_profile(const SubsetProfile& profile, int n) {
  BettiProfile betti;
  betti.kind = ProfileKind::Planar;
  betti.values.resize(n - 2);
  for (int p = 0; p <= n - 3; ++p) {
    betti.values[p] = profile.counts[p] + profile.median_counts[p] +
                      profile.counts[n - 3 - p];
  }
  return betti;
}

BettiProfile planar_betti(const LengthVector& lv,
                          const EnumerationOptions& options) {
  return betti_from_profile(short_profile_planar(lv, options), lv.size());
}

BettiProfile spatial_betti(const LengthVector& lv,
                           const EnumerationOptions& options) {
  const SubsetProfile profile = short_profile_spatial(lv, options);
  const int n = lv.size();
  BettiProfile betti;
  betti.kind = ProfileKind::Spatial;
  betti.values.resize(n - 2);
  std::int64_t partial = 0;
  for (int p = 0; p <= n - 3; ++p) {
    partial += profile.counts[p] - profile.counts[n - p - 2];
    betti.values[p] = partial;
  }
  return betti;
}

PoincarePolynomial planar_poincare(const LengthVector& lv,
                                   const EnumerationOptions& options) {
  const BettiProfile betti = planar_betti(lv, options);
  PoincarePolynomial poly;
  poly.kind = ProfileKind::Planar;
  poly.coefficients = betti.values;
  return poly;
}

PoincarePolynomial spatial_poincare_from_profile(const SubsetProfile& profile,
                                                 int n) {
  // Numerator of q^(t^2) - t^(2(n-2)) q^(t^-2) in the variable x = t^2:
  // c_i = a^_i - a^_{n-2-i} for i = 0..n-2. Dividing by 1 - x turns the
  // quotient coefficients into the partial sums of c.
  std::vector<std::int64_t> partial_sums(n - 1);
  std::int64_t partial = 0;
  for (int i = 0; i <= n - 2; ++i) {
    partial += profile.counts[i] - profile.counts[n - 2 - i];
    partial_sums[i] = partial;
  }
  if (partial_sums[n - 2] != 0) {
    throw Error(ErrorCode::DivisionRemainder,
                "q^(t^2) - t^(2(n-2)) q^(t^-2) not divisible by 1 - t^2");
  }
  PoincarePolynomial poly;
  poly.kind = ProfileKind::Spatial;
  poly.coefficients.assign(2 * (n - 3) + 1, 0);
  for (int i = 0; i <= n - 3; ++i) {
    poly.coefficients[2 * i] = partial_sums[i];
  }
  return poly;
}

PoincarePolynomial spatial_poincare(const LengthVector& lv,
                                    const EnumerationOptions& options) {
  return spatial_poincare_from_profile(short_profile_spatial(lv, options),
                                       lv.size());
}

std::int64_t spatial_total_from_profile(const SubsetProfile& profile, int n) {
  std::int64_t q_at_one = 0;
  std::int64_t q_prime_at_one = 0;
  for (int j = 0; j <= n - 1; ++j) {
    q_at_one += profile.counts[j];
    q_prime_at_one += static_cast<std::int64_t>(j) * profile.counts[j];
  }
  return (n - 2) * q_at_one - 2 * q_prime_at_one;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

double binomial_real(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 62) return static_cast<double>(binomial(n, k));
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

EquilateralClosedForm equilateral_planar(int n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenN,
                "equilateral planar closed form requires odd n >= 3");
  }
  EquilateralClosedForm form;
  form.n = n;
  form.r = (n - 1) / 2;
  form.betti.kind = ProfileKind::Planar;
  form.betti.values.resize(n - 2);
  for (int k = 0; k <= n - 3; ++k) {
    if (k < form.r - 1) {
      form.betti.values[k] = binomial(n - 1, k);
    } else if (k == form.r - 1) {
      form.betti.values[k] = 2 * binomial(n - 1, form.r - 1);
    } else {
      form.betti.values[k] = binomial(n - 1, k + 2);
    }
  }
  form.total = (std::int64_t{1} << (n - 1)) - binomial(n - 1, form.r);
  return form;
}

std::int64_t equilateral_spatial_total(int n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenN,
                "equilateral spatial total requires odd n >= 3");
  }
  const int k = (n - 1) / 2;
  std::int64_t total = 0;
  for (int i = 0; i <= k - 1; ++i) {
    total += binomial(2 * k, i) * (k - i);
  }
  return total;
}

std::int64_t equilateral_spatial_betti(int n, int p) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenN,
                "equilateral spatial Betti formula requires odd n >= 3");
  }
  std::int64_t sum = 0;
  for (int i = 0; i <= p; ++i) sum += binomial(n - 1, i);
  return sum;
}

}  // namespace polyspace
