#include "gmatch/selftest.hpp"

#include <gtest/gtest.h>

namespace gmatch {
namespace {

TEST(SelftestTest, AllSuitesPassOnCorrectBuild) {
  for (const SuiteResult& s : run_selftest({})) {
    EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
    EXPECT_GT(s.cases, 0u);
  }
}

TEST(SelftestTest, ReducedSuitesPass) {
  for (const SuiteResult& s : run_selftest({.max_n = 3, .seed = 9})) {
    EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
  }
}

TEST(SelftestTest, CorruptedScoringSignIsCaught) {
  SelftestOptions opts;
  // Flip the sign of the mismatch penalty (s3 - s2) in the product.
  opts.apply = [](const AlignmentOperator& op, std::span<const double> v, std::span<double> out) {
    ScoringParams p = op.params();
    const double penalty = p.s3 - p.s2;
    p.s3 = p.s2 - penalty;
    AlignmentOperator(op.g1(), op.g2(), p).apply(v, out);
  };
  const auto results = run_selftest(opts);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results.front().name, "operator-dense-equivalence");
  EXPECT_FALSE(results.front().passed);
}

TEST(SelftestTest, BruteForceHelpers) {
  const std::vector<double> s = {0.0, 1.0, 1.0, 0.0};
  EXPECT_EQ(brute_force_assignment_max(s, 2), 2.0);
  const DenseMatrix a = dense_alignment_matrix(Graph(2), Graph(2), make_params(1.0, 1.0));
  EXPECT_EQ(brute_force_quadratic_max(a, 2), 8.0);
}

}  // namespace
}  // namespace gmatch
