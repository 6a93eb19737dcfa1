#include "oracle.hpp"

#include <cmath>
#include <vector>

namespace polyspace::testing {

namespace {

struct OracleState {
  const LengthVector* lv = nullptr;
  ProfileKind kind = ProfileKind::Planar;
  std::vector<int> non_anchor;
  std::vector<int> subset;  // indices of the current subset, anchor included
  SubsetProfile profile;
};

void classify(OracleState& state) {
  const LengthVector& lv = *state.lv;
  const int slot = static_cast<int>(state.subset.size()) - 1;
  if (lv.mode() == ArithmeticMode::Exact) {
    std::int64_t in_sum = 0;
    std::int64_t out_sum = 0;
    for (int i = 0; i < lv.size(); ++i) {
      bool in = false;
      for (int j : state.subset) in |= (j == i);
      (in ? in_sum : out_sum) += lv.integers()[i];
    }
    if (in_sum < out_sum) {
      ++state.profile.counts[slot];
    } else if (in_sum == out_sum) {
      ++state.profile.median_counts[slot];
    }
    return;
  }
  double in_sum = 0.0;
  double out_sum = 0.0;
  for (int i = 0; i < lv.size(); ++i) {
    bool in = false;
    for (int j : state.subset) in |= (j == i);
    (in ? in_sum : out_sum) += lv[i];
  }
  const double s = in_sum - out_sum;
  const double scale = in_sum + out_sum;
  if (std::abs(s) <= kMedianTol * scale) {
    ++state.profile.median_counts[slot];
  } else if (std::abs(s) <= kAmbiguousTol * scale) {
    throw Error(ErrorCode::ToleranceAmbiguous, "oracle: ambiguous sum");
  } else if (s < 0.0) {
    ++state.profile.counts[slot];
  }
}

void recurse(OracleState& state, std::size_t next) {
  classify(state);
  for (std::size_t i = next; i < state.non_anchor.size(); ++i) {
    state.subset.push_back(state.non_anchor[i]);
    recurse(state, i + 1);
    state.subset.pop_back();
  }
}

}  // namespace

SubsetProfile oracle_brute_force(const LengthVector& lv, ProfileKind kind) {
  const int n = lv.size();
  if (n > 20) {
    throw Error(ErrorCode::CapExceeded, "oracle supports n <= 20");
  }
  int anchor;
  if (kind == ProfileKind::Planar) {
    anchor = 0;
    for (int i = 1; i < n; ++i) {
      if (lv[i] > lv[anchor]) anchor = i;
    }
  } else {
    anchor = n - 1;
  }

  OracleState state;
  state.lv = &lv;
  state.kind = kind;
  for (int i = 0; i < n; ++i) {
    if (i != anchor) state.non_anchor.push_back(i);
  }
  state.subset = {anchor};
  state.profile.kind = kind;
  state.profile.counts.assign(n, 0);
  state.profile.median_counts.assign(n, 0);
  recurse(state, 0);

  if (kind == ProfileKind::Spatial) {
    for (std::int64_t medians : state.profile.median_counts) {
      if (medians != 0) {
        throw Error(ErrorCode::NonGeneric, "oracle: median subset found");
      }
    }
    state.profile.median_counts.assign(n, 0);
  }
  return state.profile;
}

}  // namespace polyspace::testing
