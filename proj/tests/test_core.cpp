#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "polyspace/core.hpp"
#include "polyspace/exact.hpp"
#include "polyspace/rng.hpp"

using namespace polyspace;

namespace {

LengthVector exact_vec(std::vector<double> lengths) {
  return LengthVector(std::move(lengths), ArithmeticMode::Exact);
}

std::vector<double> random_lengths(int n, Rng& rng, int max_value = 9) {
  std::vector<double> lengths(n);
  for (double& l : lengths) l = 1.0 + double(rng.next_below(max_value));
  return lengths;
}

}  // namespace

TEST_CASE("length vector validation") {
  CHECK_THROWS_AS(exact_vec({1, 2}), Error);
  CHECK_THROWS_AS(exact_vec({1, 2, -1}), Error);
  CHECK_THROWS_AS(exact_vec({1, 2, 0}), Error);
  CHECK_THROWS_AS(exact_vec({1, 2, 2.5}), Error);
  CHECK_THROWS_AS(exact_vec({1, 2, 1e16}), Error);  // representability guard
  CHECK_NOTHROW(LengthVector({0.1, 0.2, 0.3}, ArithmeticMode::Float));
}

TEST_CASE("tilde_permute examples") {
  CHECK(tilde_permute(exact_vec({1, 1, 2})).lengths() ==
        std::vector<double>{1, 1, 2});
  CHECK(tilde_permute(exact_vec({3, 1, 2})).lengths() ==
        std::vector<double>{2, 1, 3});
  // minimal-index tie rule picks the first maximal entry
  CHECK(tilde_permute(exact_vec({2, 2, 1})).lengths() ==
        std::vector<double>{1, 2, 2});
}

TEST_CASE("tilde_permute preserves the multiset and is involutive") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + int(rng.next_below(10));
    const LengthVector lv = exact_vec(random_lengths(n, rng));
    const LengthVector once = tilde_permute(lv);
    CHECK(once.lengths()[n - 1] ==
          *std::max_element(lv.lengths().begin(), lv.lengths().end()));
    auto sorted_a = lv.lengths();
    auto sorted_b = once.lengths();
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    CHECK(sorted_a == sorted_b);
    // applying the swap again restores a permutation of the input
    auto sorted_c = tilde_permute(once).lengths();
    std::sort(sorted_c.begin(), sorted_c.end());
    CHECK(sorted_c == sorted_a);
  }
}

TEST_CASE("is_generic examples") {
  CHECK(is_generic(exact_vec({1, 1, 1})));
  CHECK_FALSE(is_generic(exact_vec({1, 1, 1, 1})));
  CHECK_FALSE(is_generic(exact_vec({1, 2, 3})));
}

TEST_CASE("equilateral genericity depends on parity") {
  for (int n = 3; n <= 15; ++n) {
    CHECK(is_generic(LengthVector::equilateral(n)) == (n % 2 == 1));
  }
}

TEST_CASE("is_generic respects the enumeration cap") {
  std::vector<double> lengths(31, 1.0);
  lengths[0] = 2.0;
  CHECK_THROWS_AS(is_generic(exact_vec(lengths)), Error);
  CHECK_NOTHROW(is_generic(exact_vec(lengths), 31));
}

TEST_CASE("float ambiguity band raises instead of classifying") {
  // signed sum of {l3} vs rest is 3e-10, inside (1e-12, 1e-9] * sum
  const LengthVector lv({1.0, 1.0, 2.0 + 3e-10}, ArithmeticMode::Float);
  CHECK_THROWS_AS(is_generic(lv), Error);
  try {
    is_generic(lv);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ToleranceAmbiguous);
  }
  // a float median inside the inner band classifies as non-generic
  const LengthVector median({1.0, 1.0, 2.0 + 1e-13}, ArithmeticMode::Float);
  CHECK_FALSE(is_generic(median));
}

TEST_CASE("total_betti") {
  CHECK(total_betti({ProfileKind::Planar, {1, 8, 1}}) == 10);
  CHECK(total_betti({ProfileKind::Planar, {1, 1}}) == 2);
  CHECK(total_betti({ProfileKind::Spatial, {1, 1}}) == 2);
}

TEST_CASE("poincare polynomial evaluation and printing") {
  const PoincarePolynomial poly{ProfileKind::Planar, {1, 8, 1}};
  CHECK(poly.evaluate_at_one() == 10);
  CHECK(poly.evaluate(1.0) == doctest::Approx(10.0));
  CHECK(poly.evaluate(2.0) == doctest::Approx(1 + 16 + 4));
  CHECK(poly.to_string() == "1 + 8t + t^2");
  const PoincarePolynomial sphere{ProfileKind::Spatial, {1, 0, 1}};
  CHECK(sphere.to_string() == "1 + t^2");
}

TEST_CASE("profiles are invariant under positive scaling") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + int(rng.next_below(8));
    const auto lengths = random_lengths(n, rng);
    const LengthVector lv = exact_vec(lengths);

    auto doubled = lengths;
    for (double& l : doubled) l *= 2.0;
    CHECK(short_profile_planar(exact_vec(doubled)) ==
          short_profile_planar(lv));

    auto halved = lengths;
    for (double& l : halved) l *= 0.5;
    const LengthVector scaled(halved, ArithmeticMode::Float);
    CHECK(short_profile_planar(scaled).counts ==
          short_profile_planar(lv).counts);
  }
}
