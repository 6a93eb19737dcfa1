#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyspace {

enum class ErrorCode {
  ParseError,
  CapExceeded,
  NonGeneric,
  ToleranceAmbiguous,
  EvenN,
  TNonpositive,
  DivisionRemainder,
  ConfigInvalid,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Arithmetic mode of a length vector. Exact mode requires integer lengths
/// and decides short/median subsets with integer sums; Float mode classifies
/// signed sums against a relative tolerance band.
enum class ArithmeticMode { Exact, Float };

/// Relative tolerance band for Float mode: a signed sum s is a median iff
/// |s| <= kMedianTol * sum(l); values in (kMedianTol, kAmbiguousTol] * sum(l)
/// raise ToleranceAmbiguous instead of being classified.
inline constexpr double kMedianTol = 1e-12;
inline constexpr double kAmbiguousTol = 1e-9;

/// Default cap on n for 2^(n-1) subset enumeration.
inline constexpr int kDefaultEnumerationCap = 30;

/// Side lengths of an n-gon, n >= 3, all positive. Only ratios matter
/// (scaling by t > 0 leaves every derived invariant unchanged).
class LengthVector {
 public:
  LengthVector(std::vector<double> lengths, ArithmeticMode mode);

  static LengthVector equilateral(int n);

  int size() const { return static_cast<int>(lengths_.size()); }
  ArithmeticMode mode() const { return mode_; }
  const std::vector<double>& lengths() const { return lengths_; }
  double operator[](int i) const { return lengths_[i]; }

  /// Integer view; valid only in Exact mode.
  const std::vector<std::int64_t>& integers() const;

  double total() const;

  /// Minimal index (0-based) attaining the maximal length.
  int max_index() const;

 private:
  std::vector<double> lengths_;
  std::vector<std::int64_t> integers_;
  ArithmeticMode mode_;
};

enum class ProfileKind { Planar, Spatial };

/// Counts of short (and, for planar, median) subsets through the anchor,
/// indexed by cardinality-1: counts[p] = number of qualifying subsets of
/// cardinality p+1 containing the anchor. Planar profiles are anchored at
/// the minimal index of maximal length; spatial profiles at the last index.
struct SubsetProfile {
  ProfileKind kind = ProfileKind::Planar;
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> median_counts;

  int size() const { return static_cast<int>(counts.size()); }
  bool operator==(const SubsetProfile&) const = default;
};

/// Betti numbers b_p for p = 0..n-3. For spatial profiles entry i holds the
/// Betti number of degree 2i; odd degrees vanish.
struct BettiProfile {
  ProfileKind kind = ProfileKind::Planar;
  std::vector<std::int64_t> values;

  bool operator==(const BettiProfile&) const = default;
};

/// Integer coefficient vector by degree. Spatial polynomials populate even
/// degrees only. Evaluation at 1 is the total Betti number.
struct PoincarePolynomial {
  ProfileKind kind = ProfileKind::Planar;
  std::vector<std::int64_t> coefficients;

  double evaluate(double t) const;
  std::int64_t evaluate_at_one() const;
  std::string to_string() const;

  bool operator==(const PoincarePolynomial&) const = default;
};

/// Returns l~: the minimal-index maximal entry swapped into last position.
LengthVector tilde_permute(const LengthVector& lv);

/// True iff no signed combination sum(eps_i * l_i), eps_i = +/-1, vanishes;
/// equivalently no median subset exists. Enumerates the 2^(n-1) subsets
/// containing the last element.
bool is_generic(const LengthVector& lv, int cap = kDefaultEnumerationCap);

std::int64_t total_betti(const BettiProfile& betti);

}  // namespace polyspace
