#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cuelab/bounds.hpp"
#include "cuelab/errors.hpp"

using namespace cuelab;
using std::numbers::e;

TEST_CASE("bernstein_bound examples") {
  CHECK(bernstein_bound(TailBoundInput::make(2, 10, 1)) == doctest::Approx(std::exp(-1.0)));
  CHECK(bernstein_bound(TailBoundInput::make(1e-9, 10, 1)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(TailBoundInput::make(0, 1, 1), ValidationError);
  CHECK_THROWS_AS(TailBoundInput::make(1, -1, 1), ValidationError);
}

TEST_CASE("bernstein_bound dominates exact counting tails") {
  int violations = 0;
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 21, 34, 64}) {
    const auto cfg = KernelConfig::make(n);
    for (int i = 1; i <= 10; ++i) {
      const double theta = kTwoPi * i / 11.0;
      const auto law = counting_law(cfg, theta);
      const double sd = std::sqrt(law.variance);
      double previous = 2.0;
      for (int j = 1; j <= 20; ++j) {
        const double x = 0.25 * j;
        const double bound = bernstein_bound(TailBoundInput::make(x, sd, 1.0));
        violations += exact_tail(law, x * sd) > bound;
        CHECK(bound <= previous);
        previous = bound;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("kolmogorov_lower_bound") {
  SUBCASE("boundary case x = 512, a = 1/256") {
    const auto b = kolmogorov_lower_bound(TailBoundInput::make(512, 131072, 1));
    REQUIRE(b.has_value());
    CHECK(b->a == doctest::Approx(1.0 / 256));
    CHECK(b->epsilon == doctest::Approx(4.0));
    CHECK(b->log_value == doctest::Approx(-(512.0 * 512.0 / 2) * 5));
    CHECK(b->value >= 0.0);
    CHECK(b->value <= 1.0);
  }
  SUBCASE("second epsilon branch") {
    const double x = 600, s = 1e9;
    const auto b = kolmogorov_lower_bound(TailBoundInput::make(x, s, 1));
    REQUIRE(b.has_value());
    const double expect = std::max(64 * std::sqrt(x / s), 32 * std::sqrt(std::log(x * x)) / x);
    CHECK(b->epsilon == doctest::Approx(expect));
    CHECK(std::isfinite(b->log_value));
    CHECK(b->log_value < 0.0);
  }
  CHECK_FALSE(kolmogorov_lower_bound(TailBoundInput::make(100, 1e9, 1)).has_value());
  CHECK_FALSE(kolmogorov_lower_bound(TailBoundInput::make(512, 1000, 1)).has_value());
}

TEST_CASE("union_bound_curve") {
  const double l = std::log(10 * e);
  CHECK(union_bound_raw(10, 4 * l) == doctest::Approx(2.0 / (e * e * 10)));
  CHECK(union_bound_curve(10, 4 * l) == doctest::Approx(2.0 / (e * e * 10)));
  CHECK(union_bound_raw(10, 6 * l) == doctest::Approx(2.0 / (e * e * e * 100)));
  CHECK(union_bound_raw(10, 6 * l) == doctest::Approx(9.957e-4).epsilon(1e-3));
  CHECK(union_bound_curve(10, 0.1) == 1.0);
  double previous = 2.0;
  for (int i = 1; i < 100; ++i) {
    const double v = union_bound_curve(32, 0.3 * i);
    CHECK(v <= previous);
    previous = v;
  }
}

TEST_CASE("bonferroni_certificate") {
  SUBCASE("P = 0 for huge deviations") {
    const auto c = bonferroni_certificate(16, 1.0, 3);
    CHECK(c.p == 0.0);
    CHECK(c.lower == 0.0);
  }
  SUBCASE("T = 1 gives lower = P") {
    const auto c = bonferroni_certificate(16, 0.01, 1);
    CHECK(c.p > 0.0);
    CHECK(c.lower == c.p);
  }
  SUBCASE("P is the exact tail at t = 2xN of the N^{-1/2} arc") {
    const std::size_t n = 25;
    const auto law = counting_law(KernelConfig::make(n), 0.2);
    const auto c = bonferroni_certificate(n, 0.013, 4);
    CHECK(c.p == exact_tail(law, 2 * 0.013 * n));
    CHECK(c.lower == doctest::Approx(4 * c.p - 6 * c.p * c.p));
  }
  SUBCASE("too many arcs") {
    CHECK_THROWS_AS(bonferroni_certificate(4, 0.1, 13), ValidationError);
  }
  SUBCASE("search lands in the Bonferroni window") {
    for (std::size_t n : {16, 64, 100}) {
      const auto c = search_bonferroni_certificate(n);
      CHECK(c.arcs >= 1);
      CHECK(c.arcs <= max_bonferroni_arcs(n));
      CHECK(c.tp() >= 0.5);
      CHECK(c.tp() <= 1.5);
      CHECK(c.lower >= 0.5 * c.tp() * (2 - c.tp()) - 1e-12);
      CHECK(c.lower >= 3.0 / 8 - 1e-12);
    }
  }
}
