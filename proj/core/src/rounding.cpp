#include "gmatch/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gmatch/errors.hpp"

namespace gmatch {

ScoreMatrix::ScoreMatrix(std::vector<double> entries) : entries_(std::move(entries)) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries_.size()))));
  if (n * n != entries_.size()) {
    throw std::invalid_argument("ScoreMatrix: length " + std::to_string(entries_.size()) +
                                " is not a perfect square");
  }
  n_ = n;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k])) {
      throw std::invalid_argument("ScoreMatrix: non-finite entry at (" + std::to_string(k / n) +
                                  ", " + std::to_string(k % n) + ")");
    }
  }
}

ScoreMatrix ScoreMatrix::from_vector(std::span<const double> entries) {
  return ScoreMatrix(std::vector<double>(entries.begin(), entries.end()));
}

double assignment_weight(const ScoreMatrix& scores, const Permutation& perm) {
  if (perm.size() != scores.n()) throw SizeMismatchError("assignment_weight: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < scores.n(); ++i) total += scores(i, perm[i]);
  return total;
}

Permutation max_weight_matching(const ScoreMatrix& scores) {
  const std::size_t n = scores.n();
  if (n == 0) return Permutation{};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = 0;

  // Minimises cost = -score. Rows and columns are 1-based; column 0 is the
  // virtual root of each augmenting search.
  std::vector<double> row_pot(n + 1, 0.0);
  std::vector<double> col_pot(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, kNone);
  std::vector<std::size_t> prev_col(n + 1, kNone);
  std::vector<double> slack(n + 1);
  std::vector<char> visited(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::fill(slack.begin(), slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[col0] = 1;
      const std::size_t i0 = row_of_col[col0];
      double delta = kInf;
      std::size_t col1 = kNone;
      for (std::size_t j = 1; j <= n; ++j) {
        if (visited[j]) continue;
        const double reduced = -scores(i0 - 1, j - 1) - row_pot[i0] - col_pot[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          prev_col[j] = col0;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          row_pot[row_of_col[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != kNone);

    // Flip the augmenting path back to the root.
    do {
      const std::size_t col1 = prev_col[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<Vertex> map(n);
  for (std::size_t j = 1; j <= n; ++j) map[row_of_col[j] - 1] = j - 1;
  return Permutation(std::move(map));
}

Permutation greedy_round(const ScoreMatrix& scores) {
  const std::size_t n = scores.n();
  const std::span<const double> s = scores.entries();
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&s](std::size_t a, std::size_t b) {
    return s[a] > s[b] || (s[a] == s[b] && a < b);
  });

  std::vector<char> row_used(n, 0);
  std::vector<char> col_used(n, 0);
  std::vector<Vertex> map(n);
  std::size_t assigned = 0;
  for (const std::size_t k : order) {
    if (assigned == n) break;
    const std::size_t i = k / n;
    const std::size_t j = k % n;
    if (row_used[i] || col_used[j]) continue;
    row_used[i] = col_used[j] = 1;
    map[i] = j;
    ++assigned;
  }
  return Permutation(std::move(map));
}

}  // namespace gmatch
