#pragma once

#include <concepts>
#include <functional>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmatch/align_operator.hpp"

namespace gmatch {

// Anything with a square dimension and an out-of-place product.
template <typename Op>
concept LinearOperator = requires(const Op& op, std::span<const double> v, std::span<double> out) {
  { op.dim() } -> std::convertible_to<std::size_t>;
  op.apply(v, out);
};

inline constexpr double kDefaultEigenTol = 1e-8;
inline constexpr std::size_t kDefaultEigenMaxIters = 1000;

struct EigenResult {
  std::vector<double> vector;  // unit l2 norm
  double value = 0.0;          // Rayleigh quotient v^T A v
  std::size_t iterations = 0;
  double residual = 0.0;       // ||A v - value v||_2
  bool converged = false;      // false when max_iters was hit
  std::vector<double> rayleigh_history;
};

namespace detail {
EigenResult power_iteration(std::size_t dim,
                            const std::function<void(std::span<const double>, std::span<double>)>& apply,
                            double tol, std::size_t max_iters,
                            std::optional<std::span<const double>> start);
}  // namespace detail

// Dominant eigenpair by plain power iteration, v <- A v / ||A v||.
//
// The default start is the uniform unit vector. Iteration stops once the step
// ||v_{t+1} - v_t||_2 or the eigen-residual drops below tol, or after
// max_iters products (reported through `converged`). Throws on tol <= 0,
// max_iters == 0, or a zero / wrongly sized start vector.
template <LinearOperator Op>
EigenResult power_iteration(const Op& op, double tol = kDefaultEigenTol,
                            std::size_t max_iters = kDefaultEigenMaxIters,
                            std::optional<std::span<const double>> start = std::nullopt) {
  return detail::power_iteration(
      op.dim(), [&op](std::span<const double> v, std::span<double> out) { op.apply(v, out); },
      tol, max_iters, start);
}

// Perron vector of the alignment matrix. Entries below zero are roundoff and
// are clamped to 0.
EigenResult top_eigenvector(const AlignmentOperator& op, double tol = kDefaultEigenTol,
                            std::size_t max_iters = kDefaultEigenMaxIters,
                            std::optional<std::span<const double>> start = std::nullopt);

}  // namespace gmatch
