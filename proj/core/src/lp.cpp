#include "symq/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace symq {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kFeasibilityTol = 1e-9;
constexpr std::size_t kMaxPivots = 200000;

// One original variable expressed through standard-form columns:
// x = offset + sum(sign * column).
struct VariableMap {
  double offset = 0.0;
  std::size_t first = 0;
  int count = 1;  // 1 column, or 2 for a free variable (x+ - x-)
  double sign = 1.0;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t stride = cols_ + 1;
    double* prow = &data_[pr * stride];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < stride; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * stride];
      const double factor = row[pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < stride; ++c) row[c] -= factor * prow[c];
      row[pc] = 0.0;
    }
  }

  void remove_row(std::size_t r) {
    const std::size_t stride = cols_ + 1;
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * stride),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * stride));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseOutcome { Optimal, Unbounded };

class Simplex {
 public:
  Simplex(Tableau tableau, std::vector<std::size_t> basis, std::vector<bool> allowed)
      : t_(std::move(tableau)), basis_(std::move(basis)), allowed_(std::move(allowed)) {}

  // Minimizes cost . x over the current tableau.
  PhaseOutcome run(const std::vector<double>& cost) {
    std::vector<double> reduced(t_.cols());
    while (true) {
      compute_reduced(cost, reduced);
      std::size_t entering = t_.cols();
      for (std::size_t j = 0; j < t_.cols(); ++j) {
        if (allowed_[j] && reduced[j] < -kCostTol) {
          entering = j;
          break;
        }
      }
      if (entering == t_.cols()) return PhaseOutcome::Optimal;

      std::size_t leaving = t_.rows();
      double best = 0.0;
      for (std::size_t r = 0; r < t_.rows(); ++r) {
        const double a = t_.at(r, entering);
        if (a <= kPivotTol) continue;
        const double ratio = t_.rhs(r) / a;
        if (leaving == t_.rows() || ratio < best - 1e-12 * (1.0 + std::abs(best)) ||
            (ratio <= best + 1e-12 * (1.0 + std::abs(best)) && basis_[r] < basis_[leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (leaving == t_.rows()) return PhaseOutcome::Unbounded;
      do_pivot(leaving, entering);
    }
  }

  double objective(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t r = 0; r < t_.rows(); ++r) v += cost[basis_[r]] * t_.rhs(r);
    return v;
  }

  // Pivots artificial columns (index >= first_artificial) out of the basis;
  // rows where that is impossible are redundant and dropped.
  void expel_artificials(std::size_t first_artificial) {
    for (std::size_t r = 0; r < t_.rows();) {
      if (basis_[r] < first_artificial) {
        ++r;
        continue;
      }
      std::size_t col = first_artificial;
      double best = kPivotTol;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t_.at(r, j)) > best) {
          best = std::abs(t_.at(r, j));
          col = j;
        }
      }
      if (col == first_artificial) {
        t_.remove_row(r);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        do_pivot(r, col);
        ++r;
      }
    }
    for (std::size_t j = first_artificial; j < allowed_.size(); ++j) allowed_[j] = false;
  }

  std::vector<double> values() const {
    std::vector<double> v(t_.cols(), 0.0);
    for (std::size_t r = 0; r < t_.rows(); ++r) v[basis_[r]] = t_.rhs(r);
    return v;
  }

 private:
  void compute_reduced(const std::vector<double>& cost, std::vector<double>& reduced) const {
    for (std::size_t j = 0; j < t_.cols(); ++j) reduced[j] = cost[j];
    for (std::size_t r = 0; r < t_.rows(); ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < t_.cols(); ++j) reduced[j] -= cb * t_.at(r, j);
    }
  }

  void do_pivot(std::size_t r, std::size_t c) {
    if (++pivots_ > kMaxPivots) throw std::runtime_error("simplex exceeded the pivot limit");
    t_.pivot(r, c);
    basis_[r] = c;
  }

  Tableau t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::size_t pivots_ = 0;
};

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw std::invalid_argument("bound vectors must match the objective width");
  for (double c : lp.objective)
    if (!std::isfinite(c)) throw std::invalid_argument("objective coefficients must be finite");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lp.lower[j]) || std::isnan(lp.upper[j]) || lp.lower[j] == kInfinity ||
        lp.upper[j] == -kInfinity)
      throw std::invalid_argument("invalid variable bounds");
  }
  for (const auto& row : lp.constraints) {
    if (row.coefficients.size() != n)
      throw std::invalid_argument("constraint width " + std::to_string(row.coefficients.size()) +
                                  " does not match objective width " + std::to_string(n));
    if (!std::isfinite(row.bound)) throw std::invalid_argument("constraint bounds must be finite");
    for (double a : row.coefficients)
      if (!std::isfinite(a)) throw std::invalid_argument("constraint coefficients must be finite");
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.num_variables();

  for (std::size_t j = 0; j < n; ++j)
    if (lp.lower[j] > lp.upper[j]) return {LpStatus::Infeasible, 0.0, {}};

  // Map original variables onto nonnegative standard columns.
  std::vector<VariableMap> map(n);
  std::size_t std_cols = 0;
  struct BoundRow {
    std::size_t col;
    double bound;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    VariableMap& m = map[j];
    m.first = std_cols;
    if (std::isfinite(lo)) {
      m.offset = lo;
      m.sign = 1.0;
      if (std::isfinite(hi)) bound_rows.push_back({std_cols, hi - lo});
      std_cols += 1;
    } else if (std::isfinite(hi)) {
      m.offset = hi;
      m.sign = -1.0;
      std_cols += 1;
    } else {
      m.count = 2;
      std_cols += 2;
    }
  }

  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(lp.constraints.size() + bound_rows.size());
  for (const auto& c : lp.constraints) {
    Row row{std::vector<double>(std_cols, 0.0), c.relation, c.bound};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.coefficients[j];
      if (a == 0.0) continue;
      const VariableMap& m = map[j];
      row.b -= a * m.offset;
      if (m.count == 2) {
        row.a[m.first] += a;
        row.a[m.first + 1] -= a;
      } else {
        row.a[m.first] += a * m.sign;
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& br : bound_rows) {
    Row row{std::vector<double>(std_cols, 0.0), Relation::LessEqual, br.bound};
    row.a[br.col] = 1.0;
    rows.push_back(std::move(row));
  }

  // Normalize to nonnegative right-hand sides.
  for (auto& row : rows) {
    if (row.b < 0.0) {
      for (double& a : row.a) a = -a;
      row.b = -row.b;
      if (row.rel == Relation::LessEqual)
        row.rel = Relation::GreaterEqual;
      else if (row.rel == Relation::GreaterEqual)
        row.rel = Relation::LessEqual;
    }
  }

  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::Equal) ++slack_count;
    if (row.rel != Relation::LessEqual) ++artificial_count;
  }
  const std::size_t first_slack = std_cols;
  const std::size_t first_artificial = std_cols + slack_count;
  const std::size_t total_cols = first_artificial + artificial_count;

  Tableau tableau(rows.size(), total_cols);
  std::vector<std::size_t> basis(rows.size());
  std::size_t slack = first_slack;
  std::size_t artificial = first_artificial;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    for (std::size_t j = 0; j < std_cols; ++j) tableau.at(r, j) = row.a[j];
    tableau.rhs(r) = row.b;
    switch (row.rel) {
      case Relation::LessEqual:
        tableau.at(r, slack) = 1.0;
        basis[r] = slack++;
        break;
      case Relation::GreaterEqual:
        tableau.at(r, slack++) = -1.0;
        tableau.at(r, artificial) = 1.0;
        basis[r] = artificial++;
        break;
      case Relation::Equal:
        tableau.at(r, artificial) = 1.0;
        basis[r] = artificial++;
        break;
    }
  }

  double rhs_scale = 1.0;
  for (const auto& row : rows) rhs_scale = std::max(rhs_scale, row.b);

  Simplex simplex(std::move(tableau), std::move(basis), std::vector<bool>(total_cols, true));

  if (artificial_count > 0) {
    std::vector<double> phase1(total_cols, 0.0);
    for (std::size_t j = first_artificial; j < total_cols; ++j) phase1[j] = 1.0;
    simplex.run(phase1);
    if (simplex.objective(phase1) > kFeasibilityTol * rhs_scale) return {LpStatus::Infeasible, 0.0, {}};
    simplex.expel_artificials(first_artificial);
  }

  std::vector<double> cost(total_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& m = map[j];
    const double c = lp.objective[j];
    if (m.count == 2) {
      cost[m.first] += c;
      cost[m.first + 1] -= c;
    } else {
      cost[m.first] += c * m.sign;
    }
  }
  if (simplex.run(cost) == PhaseOutcome::Unbounded) return {LpStatus::Unbounded, -kInfinity, {}};

  const std::vector<double> std_values = simplex.values();
  LpResult result;
  result.status = LpStatus::Optimal;
  result.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& m = map[j];
    double v = m.offset;
    if (m.count == 2)
      v += std_values[m.first] - std_values[m.first + 1];
    else
      v += m.sign * std_values[m.first];
    // Snap onto bounds that were crossed by rounding.
    v = std::clamp(v, lp.lower[j], lp.upper[j]);
    result.point[j] = v;
  }
  result.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.point[j];
  return result;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& point) {
  if (point.size() != lp.num_variables()) throw std::invalid_argument("point width mismatch");
  double worst = 0.0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    worst = std::max(worst, lp.lower[j] - point[j]);
    worst = std::max(worst, point[j] - lp.upper[j]);
  }
  for (const auto& c : lp.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) lhs += c.coefficients[j] * point[j];
    switch (c.relation) {
      case Relation::LessEqual:
        worst = std::max(worst, lhs - c.bound);
        break;
      case Relation::GreaterEqual:
        worst = std::max(worst, c.bound - lhs);
        break;
      case Relation::Equal:
        worst = std::max(worst, std::abs(lhs - c.bound));
        break;
    }
  }
  return worst;
}

}  // namespace symq
