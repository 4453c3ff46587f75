#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace symq {

/// Amplitude-estimation run: n items, t marked, M phase outcomes, r repetitions
/// combined by the median.
struct CountingConfig {
  std::int64_t n = 1;
  std::int64_t t = 0;
  double delta = 0.1;
  double eps = 1.0 / 3.0;
  int M = 2;
  /// Odd; 0 picks the smallest odd r whose exact failure probability is <= eps.
  int repetitions = 1;
};

/// arcsin(sqrt(t/n)) in [0, pi/2].
double grover_angle(std::int64_t t, std::int64_t n);

/// Exact outcome distribution of the phase register.
struct PhaseDistribution {
  int M = 0;
  std::int64_t n = 1;
  std::vector<double> probability;

  /// n sin^2(pi j / M)
  double estimate(int j) const;
  int queries_per_run() const { return M - 1; }
  double mass(int j) const { return probability.at(static_cast<std::size_t>(j)); }
};

/// P(j) = (K(j/M - theta/pi) + K(j/M + theta/pi)) / 2 with the Fejer kernel
/// K(d) = sin^2(M pi d) / (M^2 sin^2(pi d)) and K = 1 at integers.
PhaseDistribution phase_distribution(double theta, int M, std::int64_t n = 1);

bool is_power_of_two(std::int64_t m);
/// Smallest power of two >= x (x >= 1).
int next_power_of_two(std::int64_t x);

/// Single-run probability that the estimate lands in [lo, hi].
double interval_mass(const PhaseDistribution& d, double lo, double hi);

/// Probability that the median of r independent runs lands in [lo, hi].
double median_in_interval(const PhaseDistribution& d, double lo, double hi, int r);

/// P(at least (r+1)/2 of r Bernoulli(q) trials succeed).
double majority_success(double q, int r);

/// Smallest odd r with 1 - majority_success(q, r) <= eps. Requires q > 1/2.
int amplification_repetitions(double q, double eps);

/// Mass on outcomes with |t' - t| above 2 pi sqrt(t (n - t)) / M + pi^2 n / M^2.
double estimation_tail_mass(const PhaseDistribution& d, std::int64_t t);

/// Independent per-trial seed from a base seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Inverse-CDF sample of an outcome.
int sample_outcome(const PhaseDistribution& d, std::mt19937_64& rng);

struct CountResult {
  double estimate = 0.0;
  std::int64_t queries = 0;
  double success_prob_exact = 0.0;
  int M = 0;
  int repetitions = 0;
};

/// Samples r runs and returns the median estimate. With exact = true, no
/// sampling happens and the estimate is the median of the single-run distribution.
CountResult estimate_count(const CountingConfig& cfg, std::uint64_t seed, bool exact = false);

struct GapMajDecision {
  int bit = 0;
  std::int64_t queries = 0;
  double success_prob_exact = 0.0;
  double single_run_success = 0.0;
  double delta = 0.0;
  int M = 0;
  int repetitions = 0;
  double estimate = 0.0;
  /// queries / sqrt(n)
  double query_constant = 0.0;
};

/// Counting with delta = 1/sqrt(n) and M = smallest power of two >= 4 sqrt(n);
/// outputs 1 iff the median estimate exceeds n/2. With exact = true, no sampling
/// happens and the bit is the more likely output.
GapMajDecision decide_gapmaj(std::int64_t n, std::int64_t true_weight, double eps, std::uint64_t seed,
                             bool exact = false);

}  // namespace symq
