#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

inline constexpr double kDefaultEpsilon = 0.001;

// Largest n accepted by dense_alignment_matrix (the matrix has n^4 entries).
inline constexpr std::size_t kDenseOracleCap = 12;

// Scores of the alignment matrix: s1 for an edge matched to an edge, s2 for a
// non-edge matched to a non-edge, s3 for anything else.
struct ScoringParams {
  double s1 = 1.0 + kDefaultEpsilon;
  double s2 = 1.0 + kDefaultEpsilon;
  double s3 = kDefaultEpsilon;
  double epsilon = kDefaultEpsilon;
  double alpha = 1.0;
};

// alpha = 1 + matches / mismatches, counting over all n^2 ordered vertex pairs
// of each graph (diagonal pairs count as non-edges). Throws
// DegenerateBalanceError when there are no mismatches.
double compute_alpha(const Graph& g1, const Graph& g2);

// s1 = alpha + epsilon, s2 = 1 + epsilon, s3 = epsilon.
ScoringParams make_params(double alpha, double epsilon = kDefaultEpsilon);

// Row-major dense matrix, used for oracles and small problems only.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::size_t dim() const noexcept { return rows; }
  void apply(std::span<const double> v, std::span<double> out) const;
};

// The n^2 x n^2 alignment matrix A, applied without materialising it.
//
// Vectors are indexed by (i, j') -> i * n + j', where i is a vertex of g1 and
// j' a vertex of g2. Writing V for the n x n reshaping of v and J for the
// all-ones matrix,
//
//   A v = (s1 + s2 - 2 s3) G1 V G2 + (s3 - s2) (G1 V J + J V G2) + s2 J V J,
//
// which costs O(n (e1 + e2) + n^2) per product.
class AlignmentOperator {
 public:
  AlignmentOperator(Graph g1, Graph g2, ScoringParams params);

  const Graph& g1() const noexcept { return g1_; }
  const Graph& g2() const noexcept { return g2_; }
  const ScoringParams& params() const noexcept { return params_; }
  std::size_t n() const noexcept { return g1_.n(); }
  std::size_t dim() const noexcept { return n() * n(); }

  // out = A v. `out` must not alias `v`.
  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

 private:
  Graph g1_;
  Graph g2_;
  ScoringParams params_;
};

// Builds the operator with alpha from compute_alpha.
AlignmentOperator make_alignment_operator(Graph g1, Graph g2,
                                          double epsilon = kDefaultEpsilon);

// Entry [(i n + j'), (r n + s')] follows the edge-match rule directly.
DenseMatrix dense_alignment_matrix(const Graph& g1, const Graph& g2, const ScoringParams& params,
                                   std::size_t max_n = kDenseOracleCap);

// 0/1 vectorisation of a permutation: y[i n + perm[i]] = 1.
std::vector<double> permutation_vector(const Permutation& perm);

// y^T A y for the vectorisation y of perm.
double quadratic_form(const AlignmentOperator& op, const Permutation& perm);

// sum_i u[i n + perm[i]], i.e. y^T u. Used when A y is already at hand.
double permutation_dot(std::span<const double> u, const Permutation& perm);

}  // namespace gmatch
