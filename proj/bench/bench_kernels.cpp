// Compares the serial reference kernels against the chunked OpenMP ones:
// subset-profile enumeration across n, and the permutation Monte Carlo
// estimator across thread counts. Profiles must agree bit-for-bit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "polyspace/core.hpp"
#include "polyspace/exact.hpp"
#include "polyspace/rng.hpp"
#include "polyspace/stochastic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace polyspace;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

LengthVector random_exact_vector(int n, Rng& rng) {
  std::vector<double> lengths(n);
  for (double& l : lengths) l = 1.0 + double(rng.next_below(1000));
  return LengthVector(std::move(lengths), ArithmeticMode::Exact);
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  std::printf("profile enumeration (serial reference vs OpenMP, %d threads)\n",
              max_threads);
  std::printf("%4s %12s %12s %9s %8s\n", "n", "serial_ms", "parallel_ms",
              "speedup", "match");
  Rng rng(12345);
  for (int n : {20, 22, 24, 26}) {
    const LengthVector lv = random_exact_vector(n, rng);
    EnumerationOptions serial;
    serial.serial = true;
    SubsetProfile reference;
    SubsetProfile parallel;
    const double serial_ms =
        time_ms([&] { reference = short_profile_planar(lv, serial); });
    const double parallel_ms =
        time_ms([&] { parallel = short_profile_planar(lv); });
    std::printf("%4d %12.1f %12.1f %9.2f %8s\n", n, serial_ms, parallel_ms,
                serial_ms / parallel_ms,
                reference == parallel ? "yes" : "NO");
  }

  std::printf("\nmc_short_profile, 2e6 permutations, n=14\n");
  std::printf("%8s %12s %14s\n", "threads", "ms", "a_3 estimate");
  const LengthVector lv = random_exact_vector(14, rng);
  for (int threads = 1; threads <= max_threads; threads *= 2) {
    McProfile profile;
    const double ms = time_ms([&] {
      profile = mc_short_profile(lv, ProfileKind::Planar, 2000000, 7, threads);
    });
    std::printf("%8d %12.1f %14.6f\n", threads, ms,
                profile.entries[3].estimate);
  }
  std::printf("(estimates are identical per seed regardless of threads)\n");
  return 0;
}
