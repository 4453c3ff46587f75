#include <gtest/gtest.h>

#include <numbers>
#include <algorithm>
#include <array>
#include <complex>
#include <random>

#include "symq/qcount.hpp"

using namespace symq;

TEST(GroverAngle, Examples) {
  EXPECT_EQ(grover_angle(0, 16), 0.0);
  EXPECT_DOUBLE_EQ(grover_angle(16, 16), std::numbers::pi / 2);
  EXPECT_NEAR(grover_angle(8, 16), std::numbers::pi / 4, 1e-15);
  EXPECT_THROW(grover_angle(17, 16), std::invalid_argument);
  EXPECT_THROW(grover_angle(-1, 16), std::invalid_argument);
}

TEST(PhaseDistribution, Examples) {
  const PhaseDistribution zero = phase_distribution(0.0, 32, 10);
  EXPECT_DOUBLE_EQ(zero.mass(0), 1.0);
  const PhaseDistribution half = phase_distribution(std::numbers::pi / 2, 16, 10);
  EXPECT_NEAR(half.mass(8), 1.0, 1e-15);
  EXPECT_EQ(half.estimate(8), 10.0);
  const PhaseDistribution quarter = phase_distribution(std::numbers::pi / 4, 2, 16);
  EXPECT_NEAR(quarter.mass(0), 0.5, 1e-15);
  EXPECT_NEAR(quarter.mass(1), 0.5, 1e-15);
  EXPECT_EQ(quarter.estimate(0), 0.0);
  EXPECT_EQ(quarter.estimate(1), 16.0);
  EXPECT_THROW(phase_distribution(0.1, 12), std::invalid_argument);
  EXPECT_THROW(phase_distribution(0.1, 1), std::invalid_argument);
}

TEST(PhaseDistribution, MatchesDirectStateComputation) {
  // Amplitudes of phase estimation with eigenphases +-theta/pi applied to the
  // uniform superposition of the two Grover eigenvectors.
  for (int M : {4, 8, 32})
    for (double theta : {0.1, 0.7, 1.2}) {
      const PhaseDistribution d = phase_distribution(theta, M);
      for (int j = 0; j < M; ++j) {
        double p = 0.0;
        for (double sign : {1.0, -1.0}) {
          std::complex<double> amp = 0.0;
          for (int k = 0; k < M; ++k)
            amp += std::exp(std::complex<double>(0, 2 * std::numbers::pi * k * (sign * theta / std::numbers::pi - double(j) / M)));
          p += 0.5 * std::norm(amp / double(M));
        }
        ASSERT_NEAR(d.mass(j), p, 1e-12);
      }
    }
}

TEST(PhaseDistribution, SumsToOne) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
  for (int M = 2; M <= 1024; M *= 2)
    for (int s = 0; s < 100; ++s) {
      const PhaseDistribution d = phase_distribution(angle(rng), M);
      double total = 0.0;
      for (double p : d.probability) {
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, 1.0 + 1e-12);
        total += p;
      }
      ASSERT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(Amplification, Repetitions) {
  EXPECT_EQ(amplification_repetitions(0.9, 1.0 / 3.0), 1);
  EXPECT_EQ(amplification_repetitions(0.6, 1.0 / 3.0), 5);  // P(Bin(5, 0.6) >= 3) = 0.68256
  EXPECT_THROW(amplification_repetitions(0.5, 0.1), std::invalid_argument);
  EXPECT_NEAR(majority_success(0.6, 3), 0.648, 1e-12);
}

TEST(EstimateCount, Trivial) {
  CountingConfig zero{16, 0, 0.1, 1.0 / 3, 16, 3};
  const CountResult a = estimate_count(zero, 1);
  EXPECT_EQ(a.estimate, 0.0);
  EXPECT_DOUBLE_EQ(a.success_prob_exact, 1.0);
  EXPECT_EQ(a.queries, 3 * 15);
  CountingConfig all{16, 16, 0.1, 1.0 / 3, 16, 1};
  EXPECT_EQ(estimate_count(all, 1).estimate, 16.0);
  EXPECT_NEAR(estimate_count(all, 1).success_prob_exact, 1.0, 1e-12);
  EXPECT_THROW(estimate_count(CountingConfig{16, 3, 0.1, 1.0 / 3, 16, 2}, 1), std::invalid_argument);
}

TEST(EstimateCount, ExactEstimateNearTruth) {
  for (std::int64_t t : {1, 40, 112, 144, 200, 255}) {
    const CountingConfig cfg{256, t, 0.1, 1.0 / 3, 64, 1};
    const double tn = static_cast<double>(t) * static_cast<double>(256 - t);
    const double bound = 2 * std::numbers::pi * std::sqrt(tn) / 64 + std::numbers::pi * std::numbers::pi * 256 / 4096;
    EXPECT_LE(std::abs(estimate_count(cfg, 0, true).estimate - static_cast<double>(t)), bound) << t;
  }
}

TEST(EstimateCount, MedianProbabilityBySummation) {
  const CountingConfig cfg{256, 144, 1.0 / 16, 1.0 / 3, 64, 1};
  const PhaseDistribution d = phase_distribution(grover_angle(144, 256), 64, 256);
  double direct = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double e = d.estimate(j);
    if (e >= 144 * 15.0 / 16 && e <= 144 * 17.0 / 16) direct += d.mass(j);
  }
  const CountResult r = estimate_count(cfg, 0, true);
  EXPECT_NEAR(r.success_prob_exact, direct, 1e-12);
  EXPECT_GT(r.success_prob_exact, 2.0 / 3.0);

  // Median of three by brute force over outcome triples.
  double median3 = 0.0;
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b)
      for (int c = 0; c < 64; ++c) {
        std::array<double, 3> v{d.estimate(a), d.estimate(b), d.estimate(c)};
        std::sort(v.begin(), v.end());
        if (v[1] >= 135 && v[1] <= 153) median3 += d.mass(a) * d.mass(b) * d.mass(c);
      }
  EXPECT_NEAR(median_in_interval(d, 135, 153, 3), median3, 1e-12);
}

TEST(EstimateCount, AmplifiedRepetitionsReachTarget) {
  const CountingConfig cfg{256, 100, 0.05, 0.1, 64, 0};
  const CountResult r = estimate_count(cfg, 3, true);
  EXPECT_EQ(r.repetitions % 2, 1);
  EXPECT_EQ(r.queries, std::int64_t{r.repetitions} * 63);
}

TEST(EstimateCount, TailBound) {
  for (std::int64_t n : {16, 64, 256, 1024})
    for (int M = 4; M <= 256; M *= 2)
      for (std::int64_t t = 0; t <= n; t += std::max<std::int64_t>(1, n / 16))
        ASSERT_LE(estimation_tail_mass(phase_distribution(grover_angle(t, n), M, n), t), 0.19) << n << " " << M << " " << t;
}

TEST(DecideGapMaj, Examples) {
  const GapMajDecision hi = decide_gapmaj(16, 12, 1.0 / 3, 1, true);
  EXPECT_EQ(hi.bit, 1);
  EXPECT_EQ(hi.M, 16);
  EXPECT_GE(hi.success_prob_exact, 2.0 / 3);
  const GapMajDecision lo = decide_gapmaj(16, 4, 1.0 / 3, 1, true);
  EXPECT_EQ(lo.bit, 0);
  EXPECT_GE(lo.success_prob_exact, 2.0 / 3);
  const GapMajDecision mid = decide_gapmaj(64, 40, 1.0 / 3, 1);
  EXPECT_EQ(mid.M, 32);
  EXPECT_LE(mid.queries, 16 * 8);
  EXPECT_THROW(decide_gapmaj(16, 8, 1.0 / 3, 1), std::invalid_argument);
  EXPECT_THROW(decide_gapmaj(15, 4, 1.0 / 3, 1), std::invalid_argument);
}

TEST(DecideGapMaj, SeededRunsAreReproducible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GapMajDecision a = decide_gapmaj(256, 144, 0.1, seed), b = decide_gapmaj(256, 144, 0.1, seed);
    EXPECT_EQ(a.bit, b.bit);
    EXPECT_EQ(a.estimate, b.estimate);
  }
}

TEST(Sampling, FrequenciesFollowDistribution) {
  const PhaseDistribution d = phase_distribution(0.6, 8, 100);
  std::mt19937_64 rng(derive_seed(5, 0));
  std::vector<int> counts(8, 0);
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) ++counts[static_cast<std::size_t>(sample_outcome(d, rng))];
  for (int j = 0; j < 8; ++j) {
    const double p = d.mass(j), sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(counts[static_cast<std::size_t>(j)] / double(trials), p, 4 * sigma + 1e-12);
  }
}
