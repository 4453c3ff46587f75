#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "symq/lp.hpp"
#include "symq/spectral_norm.hpp"

using namespace symq;

namespace {

/// Brute-force LP oracle for tiny programs with <= constraints, x >= 0:
/// evaluates every vertex formed by intersecting active constraints.
double vertex_enumeration_min(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                              const std::vector<double>& c) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(c.size());
  // Rows: constraints, then x_j >= 0 written as -x_j <= 0.
  std::vector<std::vector<double>> rows = a;
  std::vector<double> rhs = b;
  for (int j = 0; j < n; ++j) {
    std::vector<double> r(n, 0.0);
    r[j] = -1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }
  const int total = m + n;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (std::popcount(mask) != n) continue;
    Eigen::MatrixXd mat(n, n);
    Eigen::VectorXd v(n);
    int k = 0;
    for (int i = 0; i < total; ++i)
      if (mask & (1u << i)) {
        for (int j = 0; j < n; ++j) mat(k, j) = rows[i][j];
        v(k++) = rhs[i];
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(v);
    bool feasible = true;
    for (int i = 0; i < total && feasible; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += rows[i][j] * x(j);
      feasible = s <= rhs[i] + 1e-9;
    }
    if (!feasible) continue;
    double obj = 0;
    for (int j = 0; j < n; ++j) obj += c[j] * x(j);
    best = std::min(best, obj);
  }
  return best;
}

}  // namespace

TEST(Lp, SimpleOptimum) {
  // minimize -x - y s.t. x + 2y <= 4, 3x + y <= 6
  LinearProgram lp(2);
  lp.objective = {-1, -1};
  lp.add_constraint({1, 2}, Relation::LessEqual, 4);
  lp.add_constraint({3, 1}, Relation::LessEqual, 6);
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, -2.8, 1e-12);
  EXPECT_NEAR(r.point[0], 1.6, 1e-12);
  EXPECT_NEAR(r.point[1], 1.2, 1e-12);
}

TEST(Lp, Infeasible) {
  LinearProgram lp(1);
  lp.objective = {1};
  lp.add_constraint({1}, Relation::GreaterEqual, 2);
  lp.add_constraint({1}, Relation::LessEqual, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(Lp, Unbounded) {
  LinearProgram lp(2);
  lp.objective = {-1, 0};
  lp.add_constraint({1, -1}, Relation::LessEqual, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(Lp, EqualityFreeAndBoundedVariables) {
  // minimize x - y, x + y = 1, x free, -2 <= y <= 0.5
  LinearProgram lp(2);
  lp.objective = {1, -1};
  lp.set_bounds(0, -kInfinity, kInfinity);
  lp.set_bounds(1, -2, 0.5);
  lp.add_constraint({1, 1}, Relation::Equal, 1);
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.point[1], 0.5, 1e-12);
  EXPECT_LE(max_violation(lp, r.point), 1e-12);
}

TEST(Lp, UpperBoundOnlyVariable) {
  // maximize x with x <= 3 given as (-inf, 3]
  LinearProgram lp(1);
  lp.objective = {-1};
  lp.set_bounds(0, -kInfinity, 3);
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.point[0], 3.0, 1e-12);
}

TEST(Lp, RedundantEqualities) {
  LinearProgram lp(2);
  lp.objective = {1, 2};
  lp.add_constraint({1, 1}, Relation::Equal, 2);
  lp.add_constraint({2, 2}, Relation::Equal, 4);
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Lp, RejectsBadInput) {
  LinearProgram lp(2);
  lp.add_constraint({1}, Relation::LessEqual, 1);
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
  LinearProgram nan_lp(1);
  nan_lp.objective = {std::nan("")};
  EXPECT_THROW(solve_lp(nan_lp), std::invalid_argument);
}

TEST(Lp, MatchesVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 5), cost(-4, 4), rhs(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 2, m = 2 + trial % 3;
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : a)
      for (auto& v : row) v = coef(rng);
    for (auto& v : b) v = rhs(rng);
    for (auto& v : c) v = cost(rng);
    // A box keeps every program bounded.
    for (int j = 0; j < n; ++j) {
      std::vector<double> row(n, 0.0);
      row[j] = 1.0;
      a.push_back(row);
      b.push_back(10.0);
    }
    LinearProgram lp(n);
    lp.objective = c;
    for (std::size_t i = 0; i < a.size(); ++i) lp.add_constraint(a[i], Relation::LessEqual, b[i]);
    const LpResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    ASSERT_NEAR(r.value, vertex_enumeration_min(a, b, c), 1e-8) << "trial " << trial;
    ASSERT_LE(max_violation(lp, r.point), 1e-9);
  }
}

TEST(SpectralNorm, MatchesEigenOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 3 + trial % 20;
    SparseSymmetricMatrix m(dim);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t i = 0; i < dim; ++i)
      for (std::uint32_t j = i; j < dim; ++j)
        if (val(rng) < 0.4) {
          const double v = val(rng);
          m.add(i, j, v);
          dense(i, j) += v;
          if (i != j) dense(j, i) += v;
        }
    const double expected = oracle::dense_norm(dense);
    EXPECT_NEAR(spectral_norm(m, {1e-13, 0}), expected, 1e-9 * std::max(1.0, expected));
  }
}

TEST(SpectralNorm, EdgeCases) {
  EXPECT_THROW(spectral_norm(SparseSymmetricMatrix(0)), std::invalid_argument);
  EXPECT_EQ(spectral_norm(SparseSymmetricMatrix(5)), 0.0);
  SparseSymmetricMatrix m(2);
  EXPECT_THROW(m.add(0, 1, -1.0), std::invalid_argument);
  EXPECT_THROW(m.add(0, 1, std::nan("")), std::invalid_argument);
  m.add(0, 1, 1.0);
  EXPECT_NEAR(spectral_norm(m), 1.0, 1e-12);  // bipartite: eigenvalues +-1
}

TEST(SpectralNorm, ThrowsWhenIterationsRunOut) {
  // Two components with close norms converge slowly; one iteration is not enough.
  SparseSymmetricMatrix m(4);
  m.add(0, 1, 1.0);
  m.add(2, 3, 1.0 + 1e-3);
  EXPECT_THROW(spectral_norm(m, {1e-15, 1}), ConvergenceError);
}
