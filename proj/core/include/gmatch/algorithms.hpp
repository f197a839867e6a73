#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gmatch/align_operator.hpp"
#include "gmatch/graph.hpp"
#include "gmatch/spectral.hpp"

namespace gmatch {

enum class Algorithm { kEigenAlign, kProjectedPower };

std::string_view algorithm_name(Algorithm algo);  // "eigenalign" / "ppa"
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct AlignConfig {
  double epsilon = kDefaultEpsilon;
  double eigen_tol = kDefaultEigenTol;
  std::size_t eigen_max_iters = kDefaultEigenMaxIters;
  std::size_t ppa_max_iters = 30;
  // Report the best-scoring projected-power iterate instead of the last one.
  bool return_best = true;
  bool record_trajectory = false;
};

struct TrajectoryStep {
  double objective = 0.0;           // y^T A y of this iterate
  std::size_t changed_vertices = 0;  // vertices reassigned relative to the previous iterate
};

struct AlignmentResult {
  Permutation permutation;
  double objective = 0.0;  // y^T A y
  std::size_t matched_edges = 0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<TrajectoryStep> trajectory;
};

// Alignment operator with the balanced scores for this graph pair. A single
// vertex admits one correspondence only, so n == 1 uses alpha = 1 instead of
// the (undefined) balance ratio.
AlignmentOperator build_alignment_operator(const Graph& g1, const Graph& g2, double epsilon);

void validate(const AlignConfig& cfg);

// Perron vector of A rounded by exact maximum-weight bipartite matching.
AlignmentResult eigen_align(const AlignmentOperator& op, const AlignConfig& cfg = {});
AlignmentResult eigen_align(const Graph& g1, const Graph& g2, const AlignConfig& cfg = {});

// Greedy rounding of the Perron vector, then alternating y <- greedy(A y)
// over permutation vectors until a fixed point or cfg.ppa_max_iters products.
AlignmentResult projected_power_align(const AlignmentOperator& op, const AlignConfig& cfg = {});
AlignmentResult projected_power_align(const Graph& g1, const Graph& g2,
                                      const AlignConfig& cfg = {});

AlignmentResult align(const AlignmentOperator& op, Algorithm algo, const AlignConfig& cfg = {});

}  // namespace gmatch
