#include "symq/qcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace symq {

namespace {

constexpr double kPi = std::numbers::pi;

/// Fejer kernel sin^2(M pi d) / (M^2 sin^2(pi d)), equal to 1 at integers.
double fejer(double d, int M) {
  const double frac = d - std::round(d);
  if (std::abs(frac) < 1e-15) return 1.0;
  const double num = std::sin(M * kPi * frac);
  const double den = M * std::sin(kPi * frac);
  return (num * num) / (den * den);
}

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

/// p^k with 0^0 = 1, in log space.
double log_pow(double p, int k) {
  if (k == 0) return 0.0;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return k * std::log(p);
}

bool in_interval(double v, double lo, double hi) {
  const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return v >= lo - slack && v <= hi + slack;
}

void require_counting(std::int64_t t, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("counting needs n >= 1");
  if (t < 0 || t > n) throw std::invalid_argument("marked count must satisfy 0 <= t <= n");
}

void require_odd_repetitions(int r) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("repetitions must be odd and positive");
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

/// Median outcome of the single-run distribution (first j whose CDF reaches 1/2).
// Mass-weighted median of the estimate over all outcomes.
double median_estimate(const PhaseDistribution& d) {
  std::vector<std::pair<double, double>> cells;
  cells.reserve(static_cast<std::size_t>(d.M));
  for (int j = 0; j < d.M; ++j) cells.emplace_back(d.estimate(j), d.mass(j));
  std::sort(cells.begin(), cells.end());
  double cdf = 0.0;
  for (const auto& [value, mass] : cells) {
    cdf += mass;
    if (cdf >= 0.5) return value;
  }
  return cells.back().first;
}

}  // namespace

double grover_angle(std::int64_t t, std::int64_t n) {
  require_counting(t, n);
  if (t == n) return kPi / 2;
  return std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
}

double PhaseDistribution::estimate(int j) const {
  if (j < 0 || j >= M) throw std::out_of_range("phase outcome out of range");
  if (2 * j == M) return static_cast<double>(n);
  const double s = std::sin(kPi * j / M);
  return static_cast<double>(n) * s * s;
}

bool is_power_of_two(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

int next_power_of_two(std::int64_t x) {
  if (x < 1) throw std::invalid_argument("next_power_of_two needs x >= 1");
  std::int64_t m = 1;
  while (m < x) m <<= 1;
  if (m > (std::int64_t{1} << 30)) throw std::invalid_argument("phase register too large");
  return static_cast<int>(m);
}

PhaseDistribution phase_distribution(double theta, int M, std::int64_t n) {
  if (M < 2 || !is_power_of_two(M)) throw std::invalid_argument("M must be a power of two >= 2");
  if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
  if (n < 1) throw std::invalid_argument("n must be positive");
  PhaseDistribution d;
  d.M = M;
  d.n = n;
  d.probability.resize(static_cast<std::size_t>(M));
  const double phase = theta / kPi;
  for (int j = 0; j < M; ++j) {
    const double x = static_cast<double>(j) / M;
    d.probability[static_cast<std::size_t>(j)] = 0.5 * (fejer(x - phase, M) + fejer(x + phase, M));
  }
  return d;
}

double interval_mass(const PhaseDistribution& d, double lo, double hi) {
  double p = 0.0;
  for (int j = 0; j < d.M; ++j)
    if (in_interval(d.estimate(j), lo, hi)) p += d.mass(j);
  return std::min(p, 1.0);
}

double median_in_interval(const PhaseDistribution& d, double lo, double hi, int r) {
  require_odd_repetitions(r);
  double below = 0.0, above = 0.0;
  for (int j = 0; j < d.M; ++j) {
    const double e = d.estimate(j);
    if (in_interval(e, lo, hi)) continue;
    (e < lo ? below : above) += d.mass(j);
  }
  const double inside = std::max(0.0, 1.0 - below - above);
  // The median is inside iff fewer than h samples fall on either side.
  const int h = (r + 1) / 2;
  double p = 0.0;
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < h && a + b <= r; ++b) {
      const int c = r - a - b;
      const double log_term = log_choose(r, a) + log_choose(r - a, b) + log_pow(below, a) + log_pow(above, b) +
                              log_pow(inside, c);
      p += std::exp(log_term);
    }
  return std::min(p, 1.0);
}

double majority_success(double q, int r) {
  require_odd_repetitions(r);
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("probability out of range");
  double p = 0.0;
  for (int k = (r + 1) / 2; k <= r; ++k) p += std::exp(log_choose(r, k) + log_pow(q, k) + log_pow(1.0 - q, r - k));
  return std::min(p, 1.0);
}

int amplification_repetitions(double q, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (!(q > 0.5)) throw std::invalid_argument("single-run success must exceed 1/2 to amplify");
  for (int r = 1; r <= 100001; r += 2)
    if (1.0 - majority_success(q, r) <= eps) return r;
  throw std::runtime_error("amplification needs more than 100001 repetitions");
}

double estimation_tail_mass(const PhaseDistribution& d, std::int64_t t) {
  require_counting(t, d.n);
  const double n = static_cast<double>(d.n), M = d.M;
  const double bound = 2 * kPi * std::sqrt(static_cast<double>(t) * (n - static_cast<double>(t))) / M + kPi * kPi * n / (M * M);
  double p = 0.0;
  for (int j = 0; j < d.M; ++j)
    if (std::abs(d.estimate(j) - static_cast<double>(t)) > bound) p += d.mass(j);
  return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int sample_outcome(const PhaseDistribution& d, std::mt19937_64& rng) {
  // 53 random bits mapped to [0, 1); avoids library-specific distribution code.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cdf = 0.0;
  for (int j = 0; j < d.M; ++j) {
    cdf += d.mass(j);
    if (u < cdf) return j;
  }
  for (int j = d.M - 1; j >= 0; --j)
    if (d.mass(j) > 0.0) return j;
  return d.M - 1;
}

CountResult estimate_count(const CountingConfig& cfg, std::uint64_t seed, bool exact) {
  require_counting(cfg.t, cfg.n);
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) throw std::invalid_argument("delta must be positive");
  const PhaseDistribution d = phase_distribution(grover_angle(cfg.t, cfg.n), cfg.M, cfg.n);
  const double t = static_cast<double>(cfg.t);
  const double lo = (1 - cfg.delta) * t, hi = (1 + cfg.delta) * t;

  int r = cfg.repetitions;
  if (r == 0) r = amplification_repetitions(interval_mass(d, lo, hi), cfg.eps);
  require_odd_repetitions(r);

  CountResult out;
  out.M = cfg.M;
  out.repetitions = r;
  out.queries = static_cast<std::int64_t>(r) * d.queries_per_run();
  out.success_prob_exact = median_in_interval(d, lo, hi, r);
  if (exact) {
    out.estimate = median_estimate(d);
  } else {
    std::mt19937_64 rng(seed);
    std::vector<double> samples(static_cast<std::size_t>(r));
    for (auto& s : samples) s = d.estimate(sample_outcome(d, rng));
    out.estimate = median_of(std::move(samples));
  }
  return out;
}

GapMajDecision decide_gapmaj(std::int64_t n, std::int64_t true_weight, double eps, std::uint64_t seed, bool exact) {
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (n < 4 || n % 2 != 0 || root * root != n) throw std::invalid_argument("GapMaj needs an even perfect square n >= 4");
  if (true_weight != n / 2 - root && true_weight != n / 2 + root)
    throw std::invalid_argument("true weight must be n/2 - sqrt(n) or n/2 + sqrt(n)");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");

  GapMajDecision out;
  out.delta = 1.0 / static_cast<double>(root);
  out.M = next_power_of_two(4 * root);
  const PhaseDistribution d = phase_distribution(grover_angle(true_weight, n), out.M, n);
  const int correct = true_weight > n / 2 ? 1 : 0;

  // n sin^2(pi j / M) > n/2 exactly when M/4 < j < 3M/4.
  const auto says_one = [&](int j) { return 4 * j > out.M && 4 * j < 3 * out.M; };
  double p_one = 0.0;
  for (int j = 0; j < d.M; ++j)
    if (says_one(j)) p_one += d.mass(j);
  out.single_run_success = correct == 1 ? p_one : 1.0 - p_one;
  out.repetitions = amplification_repetitions(out.single_run_success, eps);
  out.success_prob_exact = majority_success(out.single_run_success, out.repetitions);
  out.queries = static_cast<std::int64_t>(out.repetitions) * d.queries_per_run();
  out.query_constant = static_cast<double>(out.queries) / static_cast<double>(root);

  if (exact) {
    out.bit = p_one >= 0.5 ? 1 : 0;
    out.estimate = median_estimate(d);
  } else {
    std::mt19937_64 rng(seed);
    std::vector<double> samples;
    int ones = 0;
    for (int k = 0; k < out.repetitions; ++k) {
      const int j = sample_outcome(d, rng);
      ones += says_one(j) ? 1 : 0;
      samples.push_back(d.estimate(j));
    }
    out.bit = 2 * ones > out.repetitions ? 1 : 0;
    out.estimate = median_of(std::move(samples));
  }
  return out;
}

}  // namespace symq
