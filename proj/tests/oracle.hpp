#pragma once

#include "polyspace/core.hpp"

namespace polyspace::testing {

/// Independent brute-force subset profile used as the oracle for the fast
/// enumeration kernels. Lists every subset containing the anchor explicitly
/// (recursion over index lists, per-subset sums recomputed from scratch,
/// no incremental updates). n <= 20.
SubsetProfile oracle_brute_force(const LengthVector& lv, ProfileKind kind);

}  // namespace polyspace::testing
