#include "doctest.h"
#include "hubloc/fuzzy.hpp"
#include "hubloc/rng.hpp"

#include <algorithm>
#include <stdexcept>

using namespace hubloc;

TEST_CASE("expected interval endpoints") {
  const auto a = expected_interval({60, 62, 64, 66});
  CHECK(a.lower == 61.0);
  CHECK(a.upper == 65.0);
  const auto z = expected_interval({0, 0, 0, 0});
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
  const auto c = expected_interval(TrapezoidalFuzzyNumber::crisp(5));
  CHECK(c.lower == 5.0);
  CHECK(c.upper == 5.0);
}

TEST_CASE("defuzzify endpoints and midpoint") {
  const TrapezoidalFuzzyNumber q{60, 62, 64, 66};
  CHECK(defuzzify(q, 0.0) == 61.0);
  CHECK(defuzzify(q, 1.0) == 65.0);
  CHECK(defuzzify(q, 0.5) == 63.0);
}

TEST_CASE("defuzzify rejects rates outside [0,1]") {
  const TrapezoidalFuzzyNumber q{1, 2, 3, 4};
  CHECK_THROWS_AS(static_cast<void>(defuzzify(q, -0.01)), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(defuzzify(q, 1.01)), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(defuzzify(q, std::nan(""))), std::invalid_argument);
}

TEST_CASE("crisp numbers are fixpoints") {
  for (double a = 0.0; a <= 1.0; a += 0.125) CHECK(defuzzify(TrapezoidalFuzzyNumber::crisp(7.25), a) == 7.25);
}

TEST_CASE("validity") {
  CHECK(TrapezoidalFuzzyNumber{1, 2, 3, 4}.is_valid());
  CHECK(TrapezoidalFuzzyNumber{0, 0, 0, 0}.is_valid());
  CHECK_FALSE(TrapezoidalFuzzyNumber{2, 1, 3, 4}.is_valid());
  CHECK_FALSE(TrapezoidalFuzzyNumber{-1, 1, 3, 4}.is_valid());
}

TEST_CASE("monotone, affine and bracketed by the expected interval") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    double v[4];
    for (double& x : v) x = rng.uniform(0.0, 100.0);
    std::sort(v, v + 4);
    const TrapezoidalFuzzyNumber q{v[0], v[1], v[2], v[3]};
    const auto e = expected_interval(q);
    double prev = -1.0;
    for (int s = 0; s <= 10; ++s) {
      const double a = s / 10.0;
      const double d = defuzzify(q, a);
      CHECK(d >= prev);
      CHECK(d >= e.lower);
      CHECK(d <= e.upper);
      CHECK(std::abs(d - (e.lower + a * (e.upper - e.lower))) < 1e-12);
      prev = d;
    }
  }
}
