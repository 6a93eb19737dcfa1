#pragma once

#include "polyspace/core.hpp"

namespace polyspace {

struct EnumerationOptions {
  int cap = kDefaultEnumerationCap;
  /// 0 = use all available threads.
  int threads = 0;
  /// Run the single-pass serial kernel instead of the chunked OpenMP one.
  /// Both produce bit-identical profiles; the serial path is kept as the
  /// reference implementation for tests and benchmarks.
  bool serial = false;
};

/// Single pass over the 2^(n-1) subsets containing the anchor, producing
/// short and median counts by cardinality. Planar profiles anchor at the
/// minimal index of maximal length; spatial profiles anchor at index n and
/// require a generic vector (any median subset raises NonGeneric).
SubsetProfile short_profile(const LengthVector& lv, ProfileKind kind,
                            const EnumerationOptions& options = {});

SubsetProfile short_profile_planar(const LengthVector& lv,
                                   const EnumerationOptions& options = {});
SubsetProfile short_profile_spatial(const LengthVector& lv,
                                    const EnumerationOptions& options = {});

/// b_p = a_p + a~_p + a_{n-3-p} for p = 0..n-3.
BettiProfile planar_betti(const LengthVector& lv,
                          const EnumerationOptions& options = {});
BettiProfile betti_from_profile(const SubsetProfile& profile, int n);

/// b_2p = sum_{j<=p} (a^_j - a^_{n-j-2}) for p = 0..n-3.
BettiProfile spatial_betti(const LengthVector& lv,
                           const EnumerationOptions& options = {});

PoincarePolynomial planar_poincare(const LengthVector& lv,
                                   const EnumerationOptions& options = {});

/// (1-t^2)^-1 [q^(t^2) - t^(2(n-2)) q^(t^-2)] by exact polynomial division;
/// a nonzero remainder signals a profile bug and raises DivisionRemainder.
PoincarePolynomial spatial_poincare(const LengthVector& lv,
                                    const EnumerationOptions& options = {});
PoincarePolynomial spatial_poincare_from_profile(const SubsetProfile& profile,
                                                 int n);

/// Total Betti number from the spatial profile via
/// (n-2) q^(1) - 2 q^'(1), independently of the polynomial division.
std::int64_t spatial_total_from_profile(const SubsetProfile& profile, int n);

/// Closed-form planar Betti numbers for equilateral n-gons, n odd = 2r+1.
/// The total equals 2^(n-1) - C(n-1, r) and bounds every generic total of
/// size n+1 by twice its value.
struct EquilateralClosedForm {
  int n = 0;
  int r = 0;
  BettiProfile betti;
  std::int64_t total = 0;  // B_n
};

EquilateralClosedForm equilateral_planar(int n);

/// The equilateral spatial total by the classical closed-form sum
/// sum_{i=0}^{k-1} C(2k, i) (k-i) for n = 2k+1.
///
/// Caution: for n >= 5 this undercounts the profile-based total obtained
/// from the subset formulas (e.g. 6 vs 7 at n=5); see the tests comparing
/// both routes. It is exposed for the mean-vs-equilateral comparisons that
/// are defined in terms of this sum.
std::int64_t equilateral_spatial_total(int n);

/// Per-degree equilateral spatial Betti number sum_{i<=p} C(n-1, i).
/// Valid range unclear; agrees with the subset formulas only for
/// p <= (n-3)/2, so callers should cross-check against spatial_betti.
std::int64_t equilateral_spatial_betti(int n, int p);

/// Exact binomial coefficient; 0 when k < 0 or k > n. Overflows are the
/// caller's concern (safe for n <= 62).
std::int64_t binomial(int n, int k);

/// Binomial coefficient as a double; exact for n <= 62, lgamma beyond.
double binomial_real(int n, int k);

}  // namespace polyspace
