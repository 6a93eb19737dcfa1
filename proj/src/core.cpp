#include "polyspace/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace polyspace {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::NonGeneric: return "NON_GENERIC";
    case ErrorCode::ToleranceAmbiguous: return "TOLERANCE_AMBIGUOUS";
    case ErrorCode::EvenN: return "EVEN_N";
    case ErrorCode::TNonpositive: return "T_NONPOSITIVE";
    case ErrorCode::DivisionRemainder: return "DIVISION_REMAINDER";
    case ErrorCode::ConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

LengthVector::LengthVector(std::vector<double> lengths, ArithmeticMode mode)
    : lengths_(std::move(lengths)), mode_(mode) {
  if (lengths_.size() < 3) {
    throw Error(ErrorCode::ParseError, "length vector needs n >= 3");
  }
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::ParseError, "lengths must be positive and finite");
    }
  }
  if (mode_ == ArithmeticMode::Exact) {
    integers_.reserve(lengths_.size());
    double sum = 0.0;
    for (double l : lengths_) {
      if (l != std::floor(l) || l > 9e15) {
        throw Error(ErrorCode::ParseError,
                    "exact mode requires integer lengths");
      }
      sum += l;
      integers_.push_back(static_cast<std::int64_t>(l));
    }
    // Signed subset sums range over [-sum, sum]; keep them well inside int64.
    if (sum >= static_cast<double>(std::int64_t{1} << 62)) {
      throw Error(ErrorCode::ParseError, "exact lengths overflow 64-bit sums");
    }
  }
}

LengthVector LengthVector::equilateral(int n) {
  if (n < 3) {
    throw Error(ErrorCode::ParseError, "equilateral needs n >= 3");
  }
  return LengthVector(std::vector<double>(n, 1.0), ArithmeticMode::Exact);
}

const std::vector<std::int64_t>& LengthVector::integers() const {
  if (mode_ != ArithmeticMode::Exact) {
    throw Error(ErrorCode::ParseError, "integer view requires exact mode");
  }
  return integers_;
}

double LengthVector::total() const {
  double sum = 0.0;
  for (double l : lengths_) sum += l;
  return sum;
}

int LengthVector::max_index() const {
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (lengths_[i] > lengths_[best]) best = i;
  }
  return best;
}

double PoincarePolynomial::evaluate(double t) const {
  double value = 0.0;
  double power = 1.0;
  for (std::int64_t c : coefficients) {
    value += static_cast<double>(c) * power;
    power *= t;
  }
  return value;
}

std::int64_t PoincarePolynomial::evaluate_at_one() const {
  std::int64_t sum = 0;
  for (std::int64_t c : coefficients) sum += c;
  return sum;
}

std::string PoincarePolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    if (coefficients[d] == 0) continue;
    if (!first) out << " + ";
    if (coefficients[d] != 1 || d == 0) out << coefficients[d];
    if (d == 1) out << "t";
    if (d > 1) out << "t^" << d;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

LengthVector tilde_permute(const LengthVector& lv) {
  std::vector<double> lengths = lv.lengths();
  std::swap(lengths[lv.max_index()], lengths[lengths.size() - 1]);
  return LengthVector(std::move(lengths), lv.mode());
}

namespace {

// Scans all subsets containing the last index (complementation covers the
// rest) and reports whether any signed sum vanishes or is ambiguous.
struct GenericScan {
  bool median_found = false;
  bool ambiguous_found = false;
};

GenericScan scan_for_medians(const LengthVector& lv) {
  const int n = lv.size();
  GenericScan scan;
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  if (lv.mode() == ArithmeticMode::Exact) {
    const auto& l = lv.integers();
    std::int64_t s = l[n - 1];
    for (int i = 0; i + 1 < n; ++i) s -= l[i];
    // Gray-code walk: mask bit i toggles membership of element i.
    std::uint64_t gray = 0;
    if (s == 0) scan.median_found = true;
    for (std::uint64_t m = 1; m < masks && !scan.median_found; ++m) {
      const int bit = std::countr_zero(m);
      gray ^= std::uint64_t{1} << bit;
      s += (gray >> bit) & 1 ? 2 * l[bit] : -2 * l[bit];
      if (s == 0) scan.median_found = true;
    }
  } else {
    const auto& l = lv.lengths();
    const double tol_median = kMedianTol * lv.total();
    const double tol_ambiguous = kAmbiguousTol * lv.total();
    std::uint64_t gray = 0;
    double s = l[n - 1];
    for (int i = 0; i + 1 < n; ++i) s -= l[i];
    for (std::uint64_t m = 0; m < masks; ++m) {
      if (m > 0) {
        const int bit = std::countr_zero(m);
        gray ^= std::uint64_t{1} << bit;
        s += (gray >> bit) & 1 ? 2 * l[bit] : -2 * l[bit];
      }
      const double mag = std::abs(s);
      if (mag <= tol_median) {
        scan.median_found = true;
        break;
      }
      if (mag <= tol_ambiguous) scan.ambiguous_found = true;
    }
  }
  return scan;
}

}  // namespace

bool is_generic(const LengthVector& lv, int cap) {
  if (lv.size() > cap) {
    throw Error(ErrorCode::CapExceeded,
                "n=" + std::to_string(lv.size()) + " exceeds enumeration cap " +
                    std::to_string(cap));
  }
  GenericScan scan = scan_for_medians(lv);
  if (scan.median_found) return false;
  if (scan.ambiguous_found) {
    throw Error(ErrorCode::ToleranceAmbiguous,
                "signed subset sum falls in the ambiguity band; "
                "use exact mode or rescale");
  }
  return true;
}

std::int64_t total_betti(const BettiProfile& betti) {
  std::int64_t sum = 0;
  for (std::int64_t b : betti.values) sum += b;
  return sum;
}

}  // namespace polyspace
