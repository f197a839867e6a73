#include "gmatch/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gmatch/errors.hpp"

namespace gmatch {

Permutation::Permutation(std::vector<Vertex> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (const Vertex v : map_) {
    if (v >= map_.size() || seen[v]) {
      throw std::invalid_argument("Permutation: map is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> map(n);
  std::iota(map.begin(), map.end(), Vertex{0});
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(map_.size());
  for (Vertex i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) {
    throw SizeMismatchError("Permutation::then: sizes differ");
  }
  std::vector<Vertex> out(map_.size());
  for (Vertex i = 0; i < map_.size(); ++i) out[i] = next[map_[i]];
  return Permutation(std::move(out));
}

Graph::Graph(std::size_t n)
    : n_(n), words_per_row_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {
  build_from_bits();
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n) {
      throw std::invalid_argument("Graph: vertex id " + std::to_string(std::max(i, j)) +
                                  " out of range for n = " + std::to_string(n));
    }
    if (i == j) {
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
    }
    g.bits_[i * g.words_per_row_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    g.bits_[j * g.words_per_row_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  }
  g.build_from_bits();
  return g;
}

Graph Graph::from_adjacency(const std::vector<std::vector<bool>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    if (adjacency[i].size() != n) {
      throw SizeMismatchError("Graph: adjacency matrix is not square");
    }
    if (adjacency[i][i]) {
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
    }
    for (Vertex j = i + 1; j < n; ++j) {
      if (adjacency[i][j] != adjacency[j][i]) {
        throw std::invalid_argument("Graph: adjacency matrix is not symmetric");
      }
      if (adjacency[i][j]) edges.emplace_back(i, j);
    }
  }
  return from_edges(n, edges);
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return from_edges(n, edges);
}

void Graph::build_from_bits() {
  offsets_.assign(n_ + 1, 0);
  targets_.clear();
  std::size_t degree_sum = 0;
  for (const std::uint64_t w : bits_) degree_sum += std::popcount(w);
  targets_.reserve(degree_sum);
  for (Vertex i = 0; i < n_; ++i) {
    const std::uint64_t* row = bits_.data() + i * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t word = row[w];
      while (word != 0) {
        targets_.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    offsets_[i + 1] = targets_.size();
  }
  edge_count_ = degree_sum / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex i = 0; i < n_; ++i) {
    for (const Vertex j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

Graph generate_er(std::size_t n, double p, RngSeed seed) {
  if (n == 0) throw std::invalid_argument("generate_er: n must be positive");
  check_probability(p, "generate_er: p");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph apply_noise(const Graph& g, double lambda, RngSeed seed) {
  check_probability(lambda, "apply_noise: lambda");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < g.n(); ++i) {
    for (Vertex j = i + 1; j < g.n(); ++j) {
      const bool flip = rng.bernoulli(lambda);
      if (g.has_edge(i, j) != flip) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(g.n(), edges);
}

Graph permute(const Graph& g, const Permutation& perm) {
  if (perm.size() != g.n()) {
    throw SizeMismatchError("permute: permutation size " + std::to_string(perm.size()) +
                            " != vertex count " + std::to_string(g.n()));
  }
  std::vector<Edge> edges = g.edges();
  for (auto& [i, j] : edges) {
    i = perm[i];
    j = perm[j];
  }
  return Graph::from_edges(g.n(), edges);
}

Permutation random_permutation(std::size_t n, RngSeed seed) {
  if (n == 0) throw std::invalid_argument("random_permutation: n must be positive");
  Rng rng(seed);
  std::vector<Vertex> map(n);
  std::iota(map.begin(), map.end(), Vertex{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(map[i], map[j]);
  }
  return Permutation(std::move(map));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on runs of blanks; at most `max_tokens + 1` tokens are produced so
// callers can detect trailing garbage.
std::vector<std::string_view> split(std::string_view s, std::size_t max_tokens) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size() && out.size() <= max_tokens) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = split(line, 2);
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two fields, got '" + std::string(line) + "'");
    }
    if (!have_header) {
      if (tokens[0] != "n") {
        throw ParseError(line_no, "expected header 'n <count>' before edges");
      }
      n = parse_index(tokens[1], line_no);
      if (n == 0) throw ParseError(line_no, "vertex count must be positive");
      have_header = true;
      continue;
    }
    const Vertex i = parse_index(tokens[0], line_no);
    const Vertex j = parse_index(tokens[1], line_no);
    if (i >= n || j >= n) {
      throw ParseError(line_no, "vertex id " + std::to_string(std::max(i, j)) +
                                    " out of range for n = " + std::to_string(n));
    }
    if (i == j) throw ParseError(line_no, "self-loop at vertex " + std::to_string(i));
    edges.emplace_back(i, j);
  }
  if (!have_header) throw ParseError(line_no, "missing header 'n <count>'");
  return Graph::from_edges(n, edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.n() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

std::size_t matched_edges(const Graph& g1, const Graph& g2, const Permutation& perm) {
  if (g1.n() != g2.n() || perm.size() != g1.n()) {
    throw SizeMismatchError("matched_edges: graphs and permutation must share one size");
  }
  std::size_t count = 0;
  for (Vertex i = 0; i < g1.n(); ++i) {
    for (const Vertex j : g1.neighbors(i)) {
      if (i < j && g2.has_edge(perm[i], perm[j])) ++count;
    }
  }
  return count;
}

std::size_t alignment_residual(const Graph& g1, const Graph& g2, const Permutation& perm) {
  const std::size_t matched = matched_edges(g1, g2, perm);
  return 2 * (g1.edge_count() + g2.edge_count() - 2 * matched);
}

}  // namespace gmatch
