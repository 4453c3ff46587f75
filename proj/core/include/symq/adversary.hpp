#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "symq/boolean_function.hpp"

namespace symq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// -- relational (Ambainis) bound ------------------------------------------------

/// Explicit relation R between 0-inputs X and 1-inputs Y.
struct InputRelation {
  int n = 0;
  std::vector<Input> X;
  std::vector<Input> Y;
  std::function<bool(Input, Input)> related;
};

/// X = weight-`low` inputs, Y = weight-`high` inputs, (x, y) related iff the
/// 1-positions of x are a subset of the 1-positions of y.
struct SubsetLevelRelation {
  int n = 0;
  int low = 0;
  int high = 0;
};

struct RelationalBound {
  BigInt m, mprime, l, lprime;
  /// sqrt(m m' / (l l'))
  double bound = 0.0;

  BigRational bound_squared() const { return BigRational(m * mprime, l * lprime); }
};

/// Throws std::invalid_argument unless X and Y sit in opposite, defined outputs of f.
void validate_relation(const BooleanFunction& f, const InputRelation& rel);

/// Sensitive 0-inputs X and sensitive 1-inputs Y, related when at Hamming distance 1.
InputRelation sensitive_edge_relation(const BooleanFunction& f);

SubsetLevelRelation gapmaj_relation(int n);
InputRelation to_explicit(const SubsetLevelRelation& rel);

/// m, m' are minima of the per-input relation degrees; l, l' are maxima of the
/// per-(input, index) degrees restricted to pairs differing at that index.
RelationalBound relational_bound(const InputRelation& rel);

/// Same quantities by exact binomial counting over Hamming levels.
RelationalBound relational_bound(const SubsetLevelRelation& rel);

BigInt binomial(int n, int k);

// -- weight schemes -------------------------------------------------------------

enum class SchemeMode { MM, MMPrime, EC };

std::string_view to_string(SchemeMode mode);
SchemeMode scheme_mode_from_string(std::string_view s);

/// Nonnegative weight per (input, index). Entries never set are missing.
class WeightScheme {
 public:
  explicit WeightScheme(int n);

  int arity() const { return n_; }
  bool has(Input x, int i) const;
  double get(Input x, int i) const;
  void set(Input x, int i, double weight);
  /// Sum of w(x, i) over all indices; missing entries count as 0.
  double row_sum(Input x) const;

  /// {"entries": [{"input": "0101", "index": 0, "weight": 0.5}, ...]}
  /// input character i is x_{i+1}; index is 0-based.
  nlohmann::json to_json() const;
  static WeightScheme from_json(int n, const nlohmann::json& j);

 private:
  std::size_t slot(Input x, int i) const;
  int n_;
  std::vector<double> w_;
};

struct SchemeCheck {
  bool feasible = true;
  /// max over defined x of sum_i w(x, i)
  double objective = 0.0;
  /// Largest shortfall 1 - sum over cross pairs, or overshoot w - 1 in EC mode; 0 if none.
  double worst_violation = 0.0;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Input, Input>> worst_pair;
};

inline constexpr double kSchemeTolerance = 1e-9;

/// Verifies sum_{i: x_i != y_i} g(w(x,i), w(y,i)) >= 1 for all defined x, y with
/// f(x) != f(y), where g = sqrt(product) for MM and product otherwise. EC mode
/// additionally requires every weight <= 1. Throws on negative or missing weights.
SchemeCheck check_scheme(const BooleanFunction& f, const WeightScheme& w, SchemeMode mode);

/// Left/Right/Middle scheme for a total non-constant symmetric profile.
WeightScheme explicit_scheme(const SymmetricProfile& f);

/// Certifies explicit schemes for every profile of one arity. The scheme depends
/// on f only through t_f, so pair minima are tabulated per Hamming-level pair
/// once per t_f and reused; results match check_scheme on explicit_scheme(f).
class ExplicitSchemeCertifier {
 public:
  explicit ExplicitSchemeCertifier(int n);
  SchemeCheck check(const SymmetricProfile& f, SchemeMode mode);

 private:
  struct LevelTable {
    // index 0: sqrt of products (MM), 1: products (MM', EC); entries per level pair
    std::vector<double> min_sum[2];
    std::vector<std::pair<Input, Input>> argmin[2];
    std::vector<double> level_objective;
    double max_weight = 0.0;
  };
  const LevelTable& table_for(int t);

  int n_;
  std::vector<std::optional<LevelTable>> tables_;
};

SchemeCheck check_explicit_scheme(const SymmetricProfile& f, SchemeMode mode);

/// Weights that depend only on |x| and x_i.
struct LevelWeightScheme {
  int n = 0;
  std::vector<double> on_ones;   // weight of a 1-position at each level
  std::vector<double> on_zeros;  // weight of a 0-position at each level
};

LevelWeightScheme uniform_level_scheme(int n, double weight);
WeightScheme expand(const LevelWeightScheme& w);

/// check_scheme for level schemes on symmetric profiles of any arity, by
/// enumerating how many 1- and 0-positions of x a cross pair flips.
SchemeCheck check_level_scheme(const SymmetricProfile& f, const LevelWeightScheme& w, SchemeMode mode);

}  // namespace symq
