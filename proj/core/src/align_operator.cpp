#include "gmatch/align_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gmatch/errors.hpp"

namespace gmatch {

double compute_alpha(const Graph& g1, const Graph& g2) {
  if (g1.n() != g2.n()) {
    throw SizeMismatchError("compute_alpha: graphs have " + std::to_string(g1.n()) + " and " +
                            std::to_string(g2.n()) + " vertices");
  }
  const std::uint64_t pairs = std::uint64_t{g1.n()} * g1.n();
  const std::uint64_t e1 = 2 * std::uint64_t{g1.edge_count()};
  const std::uint64_t e2 = 2 * std::uint64_t{g2.edge_count()};
  const std::uint64_t matches = e1 * e2;
  const std::uint64_t mismatches = e1 * (pairs - e2) + (pairs - e1) * e2;
  if (mismatches == 0) {
    throw DegenerateBalanceError(
        "compute_alpha: the graph pair has no edge mismatches, so the "
        "match/mismatch balance is undefined");
  }
  return 1.0 + static_cast<double>(matches) / static_cast<double>(mismatches);
}

ScoringParams make_params(double alpha, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("make_params: epsilon must be positive, got " +
                                std::to_string(epsilon));
  }
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("make_params: alpha must be >= 1, got " + std::to_string(alpha));
  }
  return {.s1 = alpha + epsilon, .s2 = 1.0 + epsilon, .s3 = epsilon, .epsilon = epsilon,
          .alpha = alpha};
}

void DenseMatrix::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != cols || out.size() != rows) {
    throw SizeMismatchError("DenseMatrix::apply: vector length mismatch");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = data.data() + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
}

AlignmentOperator::AlignmentOperator(Graph g1, Graph g2, ScoringParams params)
    : g1_(std::move(g1)), g2_(std::move(g2)), params_(params) {
  if (g1_.n() != g2_.n()) {
    throw SizeMismatchError("AlignmentOperator: graphs have " + std::to_string(g1_.n()) +
                            " and " + std::to_string(g2_.n()) + " vertices");
  }
}

void AlignmentOperator::apply(std::span<const double> v, std::span<double> out) const {
  const std::size_t n = this->n();
  if (v.size() != n * n || out.size() != n * n) {
    throw SizeMismatchError("AlignmentOperator::apply: expected vectors of length " +
                            std::to_string(n * n));
  }
  const double c_edge = params_.s1 + params_.s2 - 2.0 * params_.s3;
  const double c_half = params_.s3 - params_.s2;

  // W = V G2, column j' collects V's columns over the neighbours of j'.
  // Row and column sums of V feed the J products.
  std::vector<double> w(n * n, 0.0);
  std::vector<double> row_sum(n, 0.0);
  std::vector<double> col_sum(n, 0.0);
  double total = 0.0;
  for (Vertex r = 0; r < n; ++r) {
    const double* vr = v.data() + r * n;
    double* wr = w.data() + r * n;
    for (Vertex j = 0; j < n; ++j) {
      double acc = 0.0;
      for (const Vertex s : g2_.neighbors(j)) acc += vr[s];
      wr[j] = acc;
      row_sum[r] += vr[j];
      col_sum[j] += vr[j];
    }
    total += row_sum[r];
  }

  // (J V G2)[., j'] depends only on j'.
  std::vector<double> col_term(n, 0.0);
  for (Vertex j = 0; j < n; ++j) {
    double acc = 0.0;
    for (const Vertex s : g2_.neighbors(j)) acc += col_sum[s];
    col_term[j] = acc;
  }

  std::vector<double> gw(n);
  for (Vertex i = 0; i < n; ++i) {
    // (G1 W)[i, .] and (G1 V J)[i, .] both sum over neighbours of i.
    std::fill(gw.begin(), gw.end(), 0.0);
    double row_term = 0.0;
    for (const Vertex r : g1_.neighbors(i)) {
      const double* wr = w.data() + r * n;
      for (Vertex j = 0; j < n; ++j) gw[j] += wr[j];
      row_term += row_sum[r];
    }
    double* ui = out.data() + i * n;
    for (Vertex j = 0; j < n; ++j) {
      ui[j] = c_edge * gw[j] + c_half * (row_term + col_term[j]) + params_.s2 * total;
    }
  }
}

std::vector<double> AlignmentOperator::apply(std::span<const double> v) const {
  std::vector<double> out(dim());
  apply(v, out);
  return out;
}

AlignmentOperator make_alignment_operator(Graph g1, Graph g2, double epsilon) {
  const double alpha = compute_alpha(g1, g2);
  return AlignmentOperator(std::move(g1), std::move(g2), make_params(alpha, epsilon));
}

DenseMatrix dense_alignment_matrix(const Graph& g1, const Graph& g2, const ScoringParams& params,
                                   std::size_t max_n) {
  if (g1.n() != g2.n()) throw SizeMismatchError("dense_alignment_matrix: graph sizes differ");
  const std::size_t n = g1.n();
  if (n > max_n) {
    throw std::invalid_argument("dense_alignment_matrix: n = " + std::to_string(n) +
                                " exceeds the oracle cap " + std::to_string(max_n));
  }
  DenseMatrix a(n * n, n * n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      for (Vertex r = 0; r < n; ++r) {
        for (Vertex s = 0; s < n; ++s) {
          const bool e1 = g1.has_edge(i, r);
          const bool e2 = g2.has_edge(j, s);
          double score = params.s3;
          if (e1 && e2) {
            score = params.s1;
          } else if (!e1 && !e2) {
            score = params.s2;
          }
          a(i * n + j, r * n + s) = score;
        }
      }
    }
  }
  return a;
}

std::vector<double> permutation_vector(const Permutation& perm) {
  const std::size_t n = perm.size();
  std::vector<double> y(n * n, 0.0);
  for (Vertex i = 0; i < n; ++i) y[i * n + perm[i]] = 1.0;
  return y;
}

double permutation_dot(std::span<const double> u, const Permutation& perm) {
  const std::size_t n = perm.size();
  if (u.size() != n * n) throw SizeMismatchError("permutation_dot: length mismatch");
  double acc = 0.0;
  for (Vertex i = 0; i < n; ++i) acc += u[i * n + perm[i]];
  return acc;
}

double quadratic_form(const AlignmentOperator& op, const Permutation& perm) {
  if (perm.size() != op.n()) {
    throw SizeMismatchError("quadratic_form: permutation size " + std::to_string(perm.size()) +
                            " != " + std::to_string(op.n()));
  }
  return permutation_dot(op.apply(permutation_vector(perm)), perm);
}

}  // namespace gmatch
