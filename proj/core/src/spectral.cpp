#include "symq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "symq/measures.hpp"

namespace symq {

namespace {

void require_spectral_arity(int n) {
  if (n > kMaxSpectralArity)
    throw std::invalid_argument("arity " + std::to_string(n) + " exceeds the spectral cap of " +
                                std::to_string(kMaxSpectralArity));
}

void require_threshold(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("threshold requires 1 <= k <= n");
}

}  // namespace

SparseSymmetricMatrix adjacency_matrix(const SensitivityGraph& g) {
  SparseSymmetricMatrix m(std::size_t{1} << g.n);
  for (const auto& [x, y] : g.edges) m.add(x, y, 1.0);
  return m;
}

double lambda_of(const BooleanFunction& f, PowerIterationOptions options) {
  require_spectral_arity(f.arity());
  return spectral_norm(adjacency_matrix(sensitivity_graph(f)), options);
}

double lambda_threshold_closed(int n, int k) {
  require_threshold(n, k);
  return std::sqrt(static_cast<double>(k) * static_cast<double>(n + 1 - k));
}

std::vector<int> decompose_thresholds(const SymmetricProfile& f) { return change_points(f); }

DecompositionCheck check_threshold_decomposition(const SymmetricProfile& f) {
  require_spectral_arity(f.arity());
  DecompositionCheck check;
  auto target = sensitivity_graph(BooleanFunction::from_profile(f)).edges;
  std::sort(target.begin(), target.end());
  check.function_edges = target.size();

  std::vector<std::pair<Input, Input>> combined;
  for (int k : decompose_thresholds(f)) {
    const auto edges = sensitivity_graph(BooleanFunction::from_profile(make_threshold(f.arity(), k))).edges;
    combined.insert(combined.end(), edges.begin(), edges.end());
  }
  check.threshold_edges = combined.size();
  std::sort(combined.begin(), combined.end());
  check.disjoint = std::adjacent_find(combined.begin(), combined.end()) == combined.end();
  check.equal = combined == target;
  return check;
}

double lambda_lower_bound(const SymmetricProfile& f) {
  if (f.is_constant()) return 0.0;
  const int n = f.arity();
  const int t = t_of(f);
  return std::sqrt(static_cast<double>(t) * static_cast<double>(n + 1 - t));
}

double lambda_upper_s0s1(const BooleanFunction& f) {
  if (f.is_constant()) throw std::invalid_argument("sqrt(s0 s1) bound needs a non-constant function");
  const OutputSensitivity s = output_sensitivity(f);
  return std::sqrt(static_cast<double>(s.s0) * static_cast<double>(s.s1));
}

StretchWitness stretch_witness(int n, int k) {
  require_threshold(n, k);
  if (n > 14) throw std::invalid_argument("stretch witness is limited to n <= 14");
  const BooleanFunction tk = BooleanFunction::from_profile(make_threshold(n, k));
  const SparseSymmetricMatrix a = adjacency_matrix(sensitivity_graph(tk));
  const std::size_t dim = a.dimension();

  std::vector<double> level_k(dim, 0.0);
  for (Input x = 0; x < dim; ++x)
    if (hamming_weight(x) == k) level_k[x] = 1.0;
  std::vector<double> image(dim);
  a.multiply(level_k, image);

  StretchWitness w;
  w.n = n;
  w.k = k;
  w.exact = true;
  const double factor = static_cast<double>(n + 1 - k);
  double image_sq = 0.0;
  double level_sq = 0.0;
  for (Input x = 0; x < dim; ++x) {
    const double expected = hamming_weight(x) == k - 1 ? factor : 0.0;
    if (image[x] != expected) w.exact = false;
    image_sq += image[x] * image[x];
    level_sq += level_k[x] * level_k[x];
  }
  w.stretch = std::sqrt(image_sq / level_sq);
  w.expected = lambda_threshold_closed(n, k);
  return w;
}

}  // namespace symq
