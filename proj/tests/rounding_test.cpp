#include "gmatch/rounding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

namespace gmatch {
namespace {

std::vector<double> permutation_matrix(const Permutation& p) {
  const std::size_t n = p.size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + p[i]] = 1.0;
  return m;
}

TEST(ScoreMatrixTest, RejectsBadShapesAndValues) {
  EXPECT_THROW(ScoreMatrix(std::vector<double>(5, 1.0)), std::invalid_argument);
  EXPECT_THROW(ScoreMatrix({1.0, std::nan(""), 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ScoreMatrix({1.0, std::numeric_limits<double>::infinity(), 0.0, 1.0}),
               std::invalid_argument);
  EXPECT_EQ(ScoreMatrix(std::vector<double>(9, 0.0)).n(), 3u);
}

TEST(MaxWeightMatchingTest, IdentityScores) {
  const ScoreMatrix s(permutation_matrix(Permutation::identity(5)));
  const Permutation p = max_weight_matching(s);
  EXPECT_EQ(p, Permutation::identity(5));
  EXPECT_EQ(assignment_weight(s, p), 5.0);
}

TEST(MaxWeightMatchingTest, AvoidsDiagonal) {
  // ones - identity, n = 2: only the swap scores 2.
  const ScoreMatrix s({0.0, 1.0, 1.0, 0.0});
  const Permutation p = max_weight_matching(s);
  EXPECT_EQ(p, Permutation({1, 0}));
  EXPECT_EQ(assignment_weight(s, p), 2.0);
}

TEST(MaxWeightMatchingTest, HandlesNegativeAndTinyInputs) {
  EXPECT_EQ(max_weight_matching(ScoreMatrix({-3.0})), Permutation::identity(1));
  const ScoreMatrix s({-5.0, -1.0, -2.0, -9.0});
  EXPECT_EQ(max_weight_matching(s), Permutation({1, 0}));
}

TEST(MaxWeightMatchingTest, AgreesWithExhaustiveSearch) {
  Rng rng({81, 0});
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 1 + c % 7;
    const std::vector<double> v = testing::random_vector(rng, n * n, -2.0, 3.0);
    const ScoreMatrix s(v);
    EXPECT_EQ(assignment_weight(s, max_weight_matching(s)), testing::max_assignment(v, n));
  }
}

TEST(MaxWeightMatchingTest, IntegerScoresWithTies) {
  Rng rng({82, 0});
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 2 + c % 6;
    std::vector<double> v(n * n);
    for (double& x : v) x = static_cast<double>(rng.below(4));
    const ScoreMatrix s(v);
    EXPECT_EQ(assignment_weight(s, max_weight_matching(s)), testing::max_assignment(v, n));
  }
}

TEST(GreedyRoundTest, HandExecutedExamples) {
  EXPECT_EQ(greedy_round(ScoreMatrix({0.9, 0.5, 0.8, 0.1})), Permutation({0, 1}));
  EXPECT_EQ(greedy_round(ScoreMatrix({0.1, 0.9, 0.8, 0.7})), Permutation({1, 0}));
}

TEST(GreedyRoundTest, TiesGoToSmallestLinearIndex) {
  EXPECT_EQ(greedy_round(ScoreMatrix(std::vector<double>(9, 1.0))), Permutation::identity(3));
  // (0,1) and (1,0) tie at the top; linear index 1 < 2 takes (0,1).
  EXPECT_EQ(greedy_round(ScoreMatrix({0.0, 5.0, 5.0, 0.0})), Permutation({1, 0}));
}

TEST(GreedyRoundTest, FixedPointOnPermutationMatrices) {
  testing::for_each_permutation(4, [](const std::vector<std::size_t>& map) {
    const Permutation p(map);
    EXPECT_EQ(greedy_round(ScoreMatrix(permutation_matrix(p))), p);
    EXPECT_EQ(max_weight_matching(ScoreMatrix(permutation_matrix(p))), p);
  });
}

TEST(RoundingPropertyTest, ExactDominatesGreedyAndScaleInvariant) {
  Rng rng({83, 0});
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<double> v = testing::random_vector(rng, n * n);
    const ScoreMatrix s(v);
    const Permutation exact = max_weight_matching(s);
    const Permutation greedy = greedy_round(s);
    EXPECT_GE(assignment_weight(s, exact), assignment_weight(s, greedy) - 1e-12);

    const double scale = 0.25 + 8.0 * rng.uniform01();
    for (double& x : v) x *= scale;
    const ScoreMatrix scaled(v);
    EXPECT_EQ(greedy_round(scaled), greedy);
    EXPECT_EQ(max_weight_matching(scaled), exact);
  }
}

TEST(RoundingPropertyTest, GreedyIsEquivariantUnderRelabeling) {
  Rng rng({84, 0});
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 2 + rng.below(12);
    const std::vector<double> v = testing::random_vector(rng, n * n);
    const Permutation rho = random_permutation(n, {rng.next(), 1});
    const Permutation tau = random_permutation(n, {rng.next(), 2});
    // Row i of S moves to rho[i], column j to tau[j].
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[rho[i] * n + tau[j]] = v[i * n + j];
    const Permutation base = greedy_round(ScoreMatrix(v));
    const Permutation moved = greedy_round(ScoreMatrix(w));
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(moved[rho[i]], tau[base[i]]);
  }
}

}  // namespace
}  // namespace gmatch
