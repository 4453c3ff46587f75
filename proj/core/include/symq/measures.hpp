#pragma once

#include "symq/boolean_function.hpp"
#include "symq/lp.hpp"

namespace symq {

/// Arity cap for the exhaustive block-sensitivity, certificate and full-LP searches.
inline constexpr int kMaxBruteForceArity = 16;

/// Per-output and global complexity measures. Outputs with no defined input report 0.
struct MeasureReport {
  int s0 = 0, s1 = 0, s = 0;
  int bs0 = 0, bs1 = 0, bs = 0;
  int C0 = 0, C1 = 0, C = 0;
  double FC0 = 0.0, FC1 = 0.0, FC = 0.0;
};

/// Maximal constant run [a, b] of a total profile around weight z.
struct WeightInterval {
  int a = 0;
  int b = 0;
};

WeightInterval weight_interval(const SymmetricProfile& f, int z);

// -- sensitivity -------------------------------------------------------------

/// Indices whose flip lands on a defined input of the other value.
int local_sensitivity(const BooleanFunction& f, Input x);

struct OutputSensitivity {
  int s0 = 0;
  int s1 = 0;
};
OutputSensitivity output_sensitivity(const BooleanFunction& f);

/// Sensitivity at weight z of a (possibly partial) symmetric profile.
int symmetric_sensitivity(const SymmetricProfile& f, int z);

// -- block sensitivity --------------------------------------------------------

struct BlockSearchOptions {
  /// Restrict candidate blocks to all-ones or all-zeros positions of x.
  bool one_type_only = false;
};

/// Maximum number of disjoint sensitive blocks, by memoized search over the
/// minimal sensitive blocks of x.
int local_block_sensitivity_bruteforce(const BooleanFunction& f, Input x, BlockSearchOptions options = {});

/// floor(z/(z-a+1)) + floor((n-z)/(b-z+1)), dropping the first term when a = 0
/// and the second when b = n. Requires a total profile.
int symmetric_bs_closed_form(const SymmetricProfile& f, int z);

/// Block sensitivity at weight z for partial symmetric profiles: packs blocks
/// of the smallest sensitive size of each type.
int symmetric_block_sensitivity(const SymmetricProfile& f, int z);

// -- certificates -------------------------------------------------------------

struct Certificate {
  int size = 0;
  /// Positions fixed by the certificate (first hit in size, then lexicographic order).
  Input positions = 0;
};

Certificate local_certificate(const BooleanFunction& f, Input x);

/// a_z + (n - b_z). Requires a total profile.
int symmetric_C_closed_form(const SymmetricProfile& f, int z);

/// Certificate complexity at weight z for partial symmetric profiles.
int symmetric_certificate(const SymmetricProfile& f, int z);

// -- fractional certificates --------------------------------------------------

/// minimize sum z_i s.t. sum_{i: x_i != y_i} z_i >= 1 for each defined y with
/// f(y) != f(x), 0 <= z_i <= 1. Constraints implied by a smaller difference set
/// are dropped before solving.
LinearProgram fc_linear_program(const BooleanFunction& f, Input x);
double fractional_certificate(const BooleanFunction& f, Input x);

/// The same program reduced by symmetry to one weight on the 1-positions and
/// one on the 0-positions of a weight-z input.
LinearProgram fc_symmetric_linear_program(const SymmetricProfile& f, int z);
double fractional_certificate_symmetric(const SymmetricProfile& f, int z);

// -- approximate degree --------------------------------------------------------

/// Smallest max_w |p(w) - f(w)| over univariate polynomials of degree <= d,
/// with p evaluated at w/n.
double min_approximation_error(const SymmetricProfile& f, int degree);

/// Smallest d with min_approximation_error(f, d) <= eps (bisection over d).
int approx_degree_symmetric(const SymmetricProfile& f, double eps);

// -- aggregation ---------------------------------------------------------------

struct AggregateOptions {
  bool block_sensitivity = true;
  bool certificate = true;
  bool fractional = true;
};

/// Maxima over defined inputs. Symmetric tables are evaluated on one input per
/// weight; their FC comes from the reduced program, cross-checked against the
/// full program when n <= 10.
MeasureReport aggregate(const BooleanFunction& f, AggregateOptions options = {});

/// Closed-form aggregation for symmetric profiles of any arity (partial allowed).
MeasureReport aggregate_symmetric(const SymmetricProfile& f);

}  // namespace symq
