#include "gmatch/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gmatch/algorithms.hpp"
#include "gmatch/experiment.hpp"
#include "gmatch/rounding.hpp"
#include "gmatch/spectral.hpp"

namespace gmatch {

double brute_force_assignment_max(std::span<const double> scores, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = -std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += scores[i * n + perm[i]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double brute_force_quadratic_max(const DenseMatrix& a, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = -std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < n; ++r) total += a(i * n + perm[i], r * n + perm[r]);
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

double rel_error(std::span<const double> got, std::span<const double> want) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) {
    num += (got[k] - want[k]) * (got[k] - want[k]);
    den += want[k] * want[k];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

Graph random_graph(Rng& rng, std::size_t n) {
  return generate_er(n, rng.uniform01(), RngSeed{rng.next(), rng.next()});
}

SuiteResult operator_suite(const SelftestOptions& opts) {
  SuiteResult res;
  res.name = "operator-dense-equivalence";
  Rng rng(RngSeed{opts.seed, 1});
  const std::size_t max_n = std::clamp<std::size_t>(opts.max_n, 1, kDenseOracleCap);
  double worst = 0.0;
  for (std::size_t c = 0; c < 100; ++c) {
    const std::size_t n = 1 + rng.below(max_n);
    const Graph g1 = random_graph(rng, n);
    const Graph g2 = random_graph(rng, n);
    const ScoringParams params = make_params(1.0 + 2.0 * rng.uniform01(), 0.001 + rng.uniform01());
    const AlignmentOperator op(g1, g2, params);
    std::vector<double> v(n * n);
    for (double& x : v) x = 2.0 * rng.uniform01() - 1.0;
    std::vector<double> got(n * n);
    if (opts.apply) {
      opts.apply(op, v, got);
    } else {
      op.apply(v, got);
    }
    std::vector<double> want(n * n);
    dense_alignment_matrix(g1, g2, params).apply(v, want);
    worst = std::max(worst, rel_error(got, want));
    ++res.cases;
  }
  res.passed = worst < 1e-12;
  std::ostringstream ss;
  ss << "max relative error " << worst << " (limit 1e-12)";
  res.detail = ss.str();
  return res;
}

SuiteResult matching_suite(const SelftestOptions& opts) {
  SuiteResult res;
  res.name = "assignment-exhaustive";
  Rng rng(RngSeed{opts.seed, 2});
  const std::size_t max_n = std::clamp<std::size_t>(opts.max_n, 1, 7);
  std::size_t mismatches = 0;
  for (std::size_t c = 0; c < 200; ++c) {
    const std::size_t n = 1 + c % max_n;
    std::vector<double> s(n * n);
    for (double& x : s) x = rng.uniform01();
    const ScoreMatrix scores(s);
    const double got = assignment_weight(scores, max_weight_matching(scores));
    if (got != brute_force_assignment_max(s, n)) ++mismatches;
    ++res.cases;
  }
  res.passed = mismatches == 0;
  res.detail = std::to_string(mismatches) + " matrices where the solver missed the optimum";
  return res;
}

SuiteResult eigen_suite(const SelftestOptions& opts) {
  SuiteResult res;
  res.name = "eigen-residual";
  Rng rng(RngSeed{opts.seed, 3});
  const std::size_t max_n = std::clamp<std::size_t>(opts.max_n, 2, kDenseOracleCap);
  double worst_residual = 0.0;
  double worst_rayleigh = 0.0;
  double most_negative = 0.0;
  for (std::size_t c = 0; c < 20; ++c) {
    const std::size_t n = 2 + rng.below(max_n - 1);
    const Graph g1 = random_graph(rng, n);
    const Graph g2 = random_graph(rng, n);
    const ScoringParams params = make_params(1.0 + rng.uniform01());
    const AlignmentOperator op(g1, g2, params);
    const EigenResult eig = top_eigenvector(op, 1e-12, 100000);
    const DenseMatrix a = dense_alignment_matrix(g1, g2, params);
    std::vector<double> av(n * n);
    a.apply(eig.vector, av);
    double rayleigh = 0.0;
    double residual = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) rayleigh += eig.vector[k] * av[k];
    for (std::size_t k = 0; k < av.size(); ++k) {
      residual += std::pow(av[k] - rayleigh * eig.vector[k], 2);
      most_negative = std::min(most_negative, eig.vector[k]);
    }
    worst_residual = std::max(worst_residual, std::sqrt(residual) / rayleigh);
    worst_rayleigh = std::max(worst_rayleigh, std::abs(rayleigh - eig.value) / rayleigh);
    ++res.cases;
  }
  res.passed = worst_residual < 1e-8 && worst_rayleigh < 1e-10 && most_negative >= 0.0;
  std::ostringstream ss;
  ss << "max relative residual " << worst_residual << ", max Rayleigh gap " << worst_rayleigh;
  res.detail = ss.str();
  return res;
}

SuiteResult recovery_suite(const SelftestOptions& opts) {
  SuiteResult res;
  res.name = "noiseless-recovery";
  const std::size_t trials = std::max<std::size_t>(opts.max_n, 1);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (const Algorithm algo : {Algorithm::kEigenAlign, Algorithm::kProjectedPower}) {
      const TrialRecord rec = run_trial({.n = 20, .p = 0.2, .lambda = 0.0, .trial_index = t,
                                         .base_seed = opts.seed, .algorithm = algo, .cfg = {}});
      // A perfect alignment counts even when an automorphism moves vertices
      // away from the planted labels.
      if (rec.failed || rec.matched_edges != rec.g1_edges) ++failures;
      ++res.cases;
    }
  }
  res.passed = failures == 0;
  res.detail = std::to_string(failures) + " noiseless trials without a perfect alignment";
  return res;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  return {operator_suite(opts), matching_suite(opts), eigen_suite(opts), recovery_suite(opts)};
}

}  // namespace gmatch
