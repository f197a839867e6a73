#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "gmatch/rng.hpp"

namespace gmatch {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Bijection on {0, ..., n-1}. Entry i is the image of vertex i.
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `map` is a bijection.
  explicit Permutation(std::vector<Vertex> map);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  Vertex operator[](Vertex i) const { return map_[i]; }
  std::span<const Vertex> map() const noexcept { return map_; }

  Permutation inverse() const;
  // (a.then(b))[i] == b[a[i]]
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> map_;
};

// Simple undirected unweighted graph, immutable once built.
//
// Membership is answered from a packed adjacency bitset; sparse products walk
// a CSR table of sorted neighbour lists.
class Graph {
 public:
  Graph() = default;

  // Empty graph on n vertices.
  explicit Graph(std::size_t n);

  // Duplicates and reversed orientations collapse. Throws on self-loops or
  // endpoints >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  // Rows of a symmetric 0/1 matrix with a zero diagonal.
  static Graph from_adjacency(const std::vector<std::vector<bool>>& adjacency);

  static Graph complete(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Vertex i, Vertex j) const {
    return (bits_[i * words_per_row_ + (j >> 6)] >> (j & 63)) & 1U;
  }

  std::span<const Vertex> neighbors(Vertex i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }

  std::size_t degree(Vertex i) const { return offsets_[i + 1] - offsets_[i]; }

  // Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  void build_from_bits();

  std::size_t n_ = 0;
  std::size_t words_per_row_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Vertex> targets_;
};

// Erdős–Rényi G(n, p): every pair i < j is an edge independently with
// probability p.
Graph generate_er(std::size_t n, double p, RngSeed seed);

// Flips the indicator of every pair i < j independently with probability
// lambda. The flip mask is symmetric with a zero diagonal.
Graph apply_noise(const Graph& g, double lambda, RngSeed seed);

// Relabels vertex i as perm[i].
Graph permute(const Graph& g, const Permutation& perm);

// Uniform permutation by Fisher–Yates.
Permutation random_permutation(std::size_t n, RngSeed seed);

// Edge-list text: a header line "n <count>", then one "i j" pair per line.
// Blank lines and lines starting with '#' are skipped.
Graph parse_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

// Number of edges {i, j} of g1 whose image {perm[i], perm[j]} is an edge of g2.
std::size_t matched_edges(const Graph& g1, const Graph& g2, const Permutation& perm);

// Squared Frobenius norm of G1 X - X G2 for the permutation matrix X with
// X[i][perm[i]] = 1, obtained as 2 (e1 + e2 - 2 matched).
std::size_t alignment_residual(const Graph& g1, const Graph& g2, const Permutation& perm);

}  // namespace gmatch
