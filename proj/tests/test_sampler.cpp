#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cuelab/counting.hpp"
#include "cuelab/dpp_sampler.hpp"
#include "test_support.hpp"

using namespace cuelab;
using std::numbers::pi;

namespace {

std::size_t count_below(const EigenangleSample& s, double theta) {
  return static_cast<std::size_t>(std::lower_bound(s.angles.begin(), s.angles.end(), theta) -
                                  s.angles.begin());
}

}  // namespace

TEST_CASE("every draw has exactly N sorted distinct angles in [0, 2pi)") {
  for (std::size_t n : {1, 2, 3, 7, 32, 100}) {
    DppSampler sampler(KernelConfig::make(n));
    for (std::uint64_t r = 0; r < 20; ++r) {
      CounterStream stream(5, r);
      const auto res = sampler.sample(stream);
      REQUIRE(res.sample.size() == n);
      CHECK(res.stats.points_drawn == n);
      CHECK(res.stats.proposals_used >= res.stats.points_drawn);
      CHECK(res.sample.replicate == r);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(res.sample.angles[j] >= 0.0);
        CHECK(res.sample.angles[j] < kTwoPi);
        if (j) CHECK(res.sample.angles[j] > res.sample.angles[j - 1]);
      }
    }
  }
}

TEST_CASE("N = 1 is uniform: mean angle pi") {
  DppSampler sampler(KernelConfig::make(1));
  constexpr int draws = 100000;
  double sum = 0;
  for (int r = 0; r < draws; ++r) {
    CounterStream stream(17, r);
    sum += sampler.sample(stream).sample.angles[0];
  }
  const double se = kTwoPi / std::sqrt(12.0) / std::sqrt(double(draws));
  CHECK(std::abs(sum / draws - pi) < 4 * se);
}

TEST_CASE("N = 2: both angles in [0, pi] with probability 1/4 - 1/pi^2") {
  DppSampler sampler(KernelConfig::make(2));
  constexpr int draws = 100000;
  int hits = 0;
  for (int r = 0; r < draws; ++r) {
    CounterStream stream(23, r);
    const auto s = sampler.sample(stream).sample;
    hits += s.angles[1] <= pi;
  }
  const double p = 0.25 - 1 / (pi * pi);
  const double se = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(double(hits) / draws - p) < 4 * se);
}

TEST_CASE("determinism is per (seed, replicate)") {
  DppSampler a(KernelConfig::make(12)), b(KernelConfig::make(12));
  std::vector<std::vector<double>> forward;
  for (std::uint64_t r = 0; r < 8; ++r) {
    CounterStream s(99, r);
    forward.push_back(a.sample(s).sample.angles);
  }
  for (std::uint64_t r = 8; r-- > 0;) {
    CounterStream s(99, r);
    CHECK(b.sample(s).sample.angles == forward[r]);
  }
}

TEST_CASE("rejection oracle for N = 2") {
  constexpr int draws = 10000;
  std::uint64_t proposals = 0;
  std::vector<double> marginal;
  for (int r = 0; r < draws; ++r) {
    CounterStream s(31, r);
    const auto res = sample_oracle_n2(s);
    proposals += res.proposals;
    REQUIRE(res.sample.size() == 2);
    // a uniformly chosen label of the pair has a uniform marginal
    marginal.push_back(res.sample.angles[r % 2]);
  }
  SUBCASE("acceptance rate 1/2") {
    // proposals per acceptance is geometric with mean 2 and variance 2
    const double mean = double(proposals) / draws;
    CHECK(std::abs(mean - 2.0) < 4 * std::sqrt(2.0 / draws));
  }
  SUBCASE("marginal is uniform (KS at alpha = 0.001)") {
    std::sort(marginal.begin(), marginal.end());
    double d = 0;
    for (std::size_t i = 0; i < marginal.size(); ++i) {
      const double f = marginal[i] / kTwoPi;
      d = std::max({d, (i + 1.0) / draws - f, f - double(i) / draws});
    }
    CHECK(std::sqrt(double(draws)) * d < testing::ks_critical_scaled(0.001));
  }
}

TEST_CASE("HKPV and rejection oracle agree on the law of N_pi (N = 2)") {
  constexpr int draws = 20000;
  std::vector<double> hkpv(3, 0.0), oracle(3, 0.0);
  DppSampler sampler(KernelConfig::make(2));
  for (int r = 0; r < draws; ++r) {
    CounterStream s1(41, r), s2(43, r);
    hkpv[count_below(sampler.sample(s1).sample, pi)] += 1;
    oracle[count_below(sample_oracle_n2(s2).sample, pi)] += 1;
  }
  const auto [stat, df] = testing::chi_squared_two_sample(hkpv, oracle);
  CHECK(stat < testing::chi_squared_critical(df, 0.001));
}

TEST_CASE("empirical law of N_theta matches the exact Poisson-binomial law") {
  constexpr int draws = 20000;
  const std::size_t n = 3;
  DppSampler sampler(KernelConfig::make(n));
  const auto law = counting_law(KernelConfig::make(n), pi);
  std::vector<double> freq(n + 1, 0.0);
  for (int r = 0; r < draws; ++r) {
    CounterStream s(47, r);
    freq[count_below(sampler.sample(s).sample, pi)] += 1;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const double p = law.pmf[k];
    CHECK(std::abs(freq[k] / draws - p) <= 4 * std::sqrt(p * (1 - p) / draws) + 1e-12);
  }
}

TEST_CASE("mean counting function equals N theta / 2pi") {
  for (std::size_t n : {4, 16}) {
    constexpr int draws = 4000;
    DppSampler sampler(KernelConfig::make(n));
    std::vector<EigenangleSample> samples;
    for (int r = 0; r < draws; ++r) {
      CounterStream s(53, r, n);
      samples.push_back(sampler.sample(s).sample);
    }
    for (int i = 1; i <= 10; ++i) {
      const double theta = kTwoPi * i / 11.0;
      double sum = 0;
      for (const auto& s : samples) sum += double(count_below(s, theta));
      const double var = counting_law(KernelConfig::make(n), theta).variance;
      CHECK(std::abs(sum / draws - n * theta / kTwoPi) < 4 * std::sqrt(var / draws));
    }
  }
}

TEST_CASE("rotate_sample") {
  CounterStream stream(3, 0);
  const auto s = sample_eigenangles(KernelConfig::make(9), stream).sample;
  CHECK(rotate_sample(s, 0.0).angles == s.angles);
  CHECK(rotate_sample(s, kTwoPi).angles == s.angles);

  auto gaps = circular_spacings(s);
  auto rotated_gaps = circular_spacings(rotate_sample(s, 2.345));
  std::sort(gaps.begin(), gaps.end());
  std::sort(rotated_gaps.begin(), rotated_gaps.end());
  REQUIRE(gaps.size() == rotated_gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) CHECK(std::abs(gaps[i] - rotated_gaps[i]) < 1e-12);
}

TEST_CASE("rotation invariance in law (chi-squared, alpha = 0.001)") {
  constexpr int draws = 20000;
  const std::size_t n = 6;
  const double theta = 2.0, phi = 1.3;
  DppSampler sampler(KernelConfig::make(n));
  std::vector<double> plain(n + 1, 0.0), rotated(n + 1, 0.0);
  for (int r = 0; r < draws; ++r) {
    CounterStream a(61, r), b(61, r + draws);
    plain[count_below(sampler.sample(a).sample, theta)] += 1;
    rotated[count_below(rotate_sample(sampler.sample(b).sample, phi), theta)] += 1;
  }
  const auto [stat, df] = testing::chi_squared_two_sample(plain, rotated);
  CHECK(stat < testing::chi_squared_critical(df, 0.001));
}
