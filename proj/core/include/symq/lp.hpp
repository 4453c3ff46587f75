#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace symq {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::GreaterEqual;
  double bound = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// minimize objective . x  subject to the constraints and lower <= x <= upper.
/// Lower bounds default to 0 and upper bounds to +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_variables)
      : objective(num_variables, 0.0), lower(num_variables, 0.0), upper(num_variables, kInfinity) {}

  std::size_t num_variables() const { return objective.size(); }
  void add_constraint(std::vector<double> coefficients, Relation relation, double bound) {
    constraints.push_back({std::move(coefficients), relation, bound});
  }
  void set_bounds(std::size_t var, double lo, double hi) {
    lower.at(var) = lo;
    upper.at(var) = hi;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> point;
};

/// Two-phase dense tableau simplex with Bland's pivoting rule.
/// Throws std::invalid_argument on dimension mismatch or non-finite data.
LpResult solve_lp(const LinearProgram& lp);

/// Largest violation of any constraint or bound at the given point (0 when feasible).
double max_violation(const LinearProgram& lp, const std::vector<double>& point);

}  // namespace symq
