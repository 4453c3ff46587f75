#pragma once

#include <vector>

#include "symq/boolean_function.hpp"
#include "symq/spectral_norm.hpp"

namespace symq {

/// Arity cap for building the 2^n-vertex sensitivity graph.
inline constexpr int kMaxSpectralArity = 16;

SparseSymmetricMatrix adjacency_matrix(const SensitivityGraph& g);

/// Spectral norm of the sensitivity-graph adjacency matrix.
double lambda_of(const BooleanFunction& f, PowerIterationOptions options = {});

/// sqrt(k (n + 1 - k))
double lambda_threshold_closed(int n, int k);

/// Thresholds k whose sensitivity graphs sum to that of f (the change points).
std::vector<int> decompose_thresholds(const SymmetricProfile& f);

struct DecompositionCheck {
  std::size_t function_edges = 0;
  std::size_t threshold_edges = 0;  // summed over all thresholds in the decomposition
  bool disjoint = false;            // no edge appears in two threshold graphs
  bool equal = false;               // union equals the edge set of f
};

/// Compares the edge sets of T_k (k in S_f) against the sensitivity graph of f.
DecompositionCheck check_threshold_decomposition(const SymmetricProfile& f);

/// sqrt(t_f (n + 1 - t_f)); 0 for a constant profile.
double lambda_lower_bound(const SymmetricProfile& f);

/// sqrt(s0 s1). Throws std::invalid_argument for a constant function.
double lambda_upper_s0s1(const BooleanFunction& f);

struct StretchWitness {
  int n = 0;
  int k = 0;
  /// A_{T_k} v_k == (n + 1 - k) v_{k-1} holds entry by entry.
  bool exact = false;
  double stretch = 0.0;   // |A v_k| / |v_k|
  double expected = 0.0;  // sqrt(k (n + 1 - k))
};

/// Multiplies the weight-k level indicator by the T_k adjacency matrix.
StretchWitness stretch_witness(int n, int k);

}  // namespace symq
