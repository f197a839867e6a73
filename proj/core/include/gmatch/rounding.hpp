#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

// n x n score matrix over (g1 vertex, g2 vertex) pairs, stored row-major so
// entry (i, j') sits at i * n + j', matching the alignment-vector layout.
class ScoreMatrix {
 public:
  // Throws std::invalid_argument on a non-square length or a non-finite entry.
  explicit ScoreMatrix(std::vector<double> entries);
  static ScoreMatrix from_vector(std::span<const double> entries);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

// sum_i scores(i, perm[i]), accumulated in row order.
double assignment_weight(const ScoreMatrix& scores, const Permutation& perm);

// Exact maximum-weight perfect matching (shortest augmenting path Hungarian
// method, O(n^3)). Among optima the result is implementation-defined but
// deterministic.
Permutation max_weight_matching(const ScoreMatrix& scores);

// Repeatedly takes the largest remaining entry whose row and column are both
// unused and assigns that row to that column. Ties go to the smallest linear
// index i * n + j'.
Permutation greedy_round(const ScoreMatrix& scores);

}  // namespace gmatch
