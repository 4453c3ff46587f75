#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symq/spectral.hpp"

using namespace symq;

namespace {
BooleanFunction table(const SymmetricProfile& p) { return BooleanFunction::from_profile(p); }
}  // namespace

TEST(Lambda, ThresholdClosedFormExamples) {
  EXPECT_DOUBLE_EQ(lambda_threshold_closed(4, 2), std::sqrt(6.0));
  EXPECT_DOUBLE_EQ(lambda_threshold_closed(4, 1), 2.0);
  EXPECT_THROW(lambda_threshold_closed(4, 5), std::invalid_argument);
  EXPECT_NEAR(lambda_of(table(make_threshold(4, 2))), std::sqrt(6.0), 1e-8);
}

TEST(Lambda, MatchesLevelPathOracle) {
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
      const SymmetricProfile p = profile_from_code(n, code);
      const double expected = oracle::level_path_lambda(p);
      ASSERT_NEAR(lambda_of(table(p)), expected, 1e-7 * std::max(1.0, expected)) << p.to_string();
    }
}

TEST(Lambda, DenseOracleOnNonSymmetricFunction) {
  const BooleanFunction f = BooleanFunction::parse(3, "01101011");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 8);
  for (const auto& [x, y] : sensitivity_graph(f).edges) a(x, y) = a(y, x) = 1.0;
  EXPECT_NEAR(lambda_of(f), oracle::dense_norm(a), 1e-8);
}

TEST(Lambda, EmptyGraphIsZero) {
  EXPECT_EQ(lambda_of(table(make_constant(5, Value::One))), 0.0);
  EXPECT_EQ(lambda_of(table(make_gapmaj(16))), 0.0);
}

TEST(Decomposition, ThresholdsPartitionEdges) {
  const DecompositionCheck d = check_threshold_decomposition(make_parity(4));
  EXPECT_TRUE(d.equal);
  EXPECT_TRUE(d.disjoint);
  EXPECT_EQ(d.function_edges, 32u);
  EXPECT_EQ(decompose_thresholds(make_parity(4)), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_TRUE(decompose_thresholds(make_constant(4, Value::Zero)).empty());
}

TEST(Bounds, Examples) {
  EXPECT_DOUBLE_EQ(lambda_lower_bound(make_threshold(5, 3)), std::sqrt(9.0));
  EXPECT_DOUBLE_EQ(lambda_lower_bound(make_constant(5, Value::Zero)), 0.0);
  EXPECT_DOUBLE_EQ(lambda_upper_s0s1(table(make_threshold(4, 1))), 2.0);
  EXPECT_THROW(lambda_upper_s0s1(table(make_constant(3, Value::One))), std::invalid_argument);
}

TEST(StretchWitness, LevelIndicatorIsStretchedExactly) {
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k) {
      const StretchWitness w = stretch_witness(n, k);
      ASSERT_TRUE(w.exact) << n << " " << k;
      ASSERT_NEAR(w.stretch, std::sqrt(double(k) * (n + 1 - k)), 1e-12);
      ASSERT_DOUBLE_EQ(w.expected, lambda_threshold_closed(n, k));
    }
  EXPECT_THROW(stretch_witness(15, 3), std::invalid_argument);
}
