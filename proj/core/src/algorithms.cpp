#include "gmatch/algorithms.hpp"

#include <stdexcept>

#include "gmatch/errors.hpp"
#include "gmatch/rounding.hpp"

namespace gmatch {

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kEigenAlign:
      return "eigenalign";
    case Algorithm::kProjectedPower:
      return "ppa";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "eigenalign") return Algorithm::kEigenAlign;
  if (name == "ppa") return Algorithm::kProjectedPower;
  return std::nullopt;
}

void validate(const AlignConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("AlignConfig: epsilon must be positive");
  if (!(cfg.eigen_tol > 0.0)) throw std::invalid_argument("AlignConfig: eigen_tol must be positive");
  if (cfg.eigen_max_iters == 0 || cfg.ppa_max_iters == 0) {
    throw std::invalid_argument("AlignConfig: iteration caps must be >= 1");
  }
}

AlignmentOperator build_alignment_operator(const Graph& g1, const Graph& g2, double epsilon) {
  if (g1.n() != g2.n()) {
    throw SizeMismatchError("graphs have " + std::to_string(g1.n()) + " and " +
                            std::to_string(g2.n()) + " vertices");
  }
  const double alpha = g1.n() == 1 ? 1.0 : compute_alpha(g1, g2);
  return AlignmentOperator(g1, g2, make_params(alpha, epsilon));
}

namespace {

ScoreMatrix perron_scores(const AlignmentOperator& op, const AlignConfig& cfg,
                          std::size_t* iterations, bool* converged) {
  const EigenResult eig = top_eigenvector(op, cfg.eigen_tol, cfg.eigen_max_iters);
  *iterations = eig.iterations;
  *converged = eig.converged;
  return ScoreMatrix(eig.vector);
}

std::size_t count_changes(const Permutation& a, const Permutation& b) {
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) changed += a[i] != b[i] ? 1 : 0;
  return changed;
}

}  // namespace

AlignmentResult eigen_align(const AlignmentOperator& op, const AlignConfig& cfg) {
  validate(cfg);
  AlignmentResult result;
  const ScoreMatrix scores = perron_scores(op, cfg, &result.iterations, &result.converged);
  result.permutation = max_weight_matching(scores);
  result.objective = quadratic_form(op, result.permutation);
  result.matched_edges = matched_edges(op.g1(), op.g2(), result.permutation);
  return result;
}

AlignmentResult eigen_align(const Graph& g1, const Graph& g2, const AlignConfig& cfg) {
  validate(cfg);
  return eigen_align(build_alignment_operator(g1, g2, cfg.epsilon), cfg);
}

AlignmentResult projected_power_align(const AlignmentOperator& op, const AlignConfig& cfg) {
  validate(cfg);
  AlignmentResult result;
  std::size_t eigen_iterations = 0;
  bool eigen_converged = false;
  // Rounding v0 equals rounding A v0 = lambda v0 for lambda > 0, so the raw
  // eigenvector product is skipped.
  Permutation current = greedy_round(perron_scores(op, cfg, &eigen_iterations, &eigen_converged));

  Permutation best = current;
  double best_objective = 0.0;
  bool have_best = false;
  std::vector<double> u(op.dim());
  double current_objective = 0.0;

  for (std::size_t t = 0; t < cfg.ppa_max_iters; ++t) {
    op.apply(permutation_vector(current), u);
    current_objective = permutation_dot(u, current);
    if (!have_best || current_objective > best_objective) {
      best = current;
      best_objective = current_objective;
      have_best = true;
    }
    Permutation next = greedy_round(ScoreMatrix::from_vector(u));
    const std::size_t changed = count_changes(current, next);
    ++result.iterations;
    if (cfg.record_trajectory) result.trajectory.push_back({current_objective, changed});
    if (changed == 0) {
      result.converged = true;
      break;
    }
    current = std::move(next);
  }

  if (!result.converged) {
    // The last iterate has not been scored yet.
    current_objective = quadratic_form(op, current);
    if (current_objective > best_objective) {
      best = current;
      best_objective = current_objective;
    }
  }

  if (cfg.return_best) {
    result.permutation = std::move(best);
    result.objective = best_objective;
  } else {
    result.permutation = std::move(current);
    result.objective = current_objective;
  }
  result.matched_edges = matched_edges(op.g1(), op.g2(), result.permutation);
  return result;
}

AlignmentResult projected_power_align(const Graph& g1, const Graph& g2, const AlignConfig& cfg) {
  validate(cfg);
  return projected_power_align(build_alignment_operator(g1, g2, cfg.epsilon), cfg);
}

AlignmentResult align(const AlignmentOperator& op, Algorithm algo, const AlignConfig& cfg) {
  switch (algo) {
    case Algorithm::kEigenAlign:
      return eigen_align(op, cfg);
    case Algorithm::kProjectedPower:
      return projected_power_align(op, cfg);
  }
  throw std::invalid_argument("align: unknown algorithm");
}

}  // namespace gmatch
