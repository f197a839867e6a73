#include "gmatch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gmatch/errors.hpp"

namespace gmatch {

namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double residual_norm(std::span<const double> av, std::span<const double> v, double value) {
  double acc = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double d = av[k] - value * v[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

namespace detail {

EigenResult power_iteration(std::size_t dim,
                            const std::function<void(std::span<const double>, std::span<double>)>& apply,
                            double tol, std::size_t max_iters,
                            std::optional<std::span<const double>> start) {
  if (!(tol > 0.0)) throw std::invalid_argument("power_iteration: tol must be positive");
  if (max_iters == 0) throw std::invalid_argument("power_iteration: max_iters must be >= 1");
  if (dim == 0) throw std::invalid_argument("power_iteration: empty operator");

  EigenResult result;
  std::vector<double>& v = result.vector;
  if (start) {
    if (start->size() != dim) {
      throw SizeMismatchError("power_iteration: start vector has wrong length");
    }
    v.assign(start->begin(), start->end());
    const double nrm = norm2(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      throw std::invalid_argument("power_iteration: start vector must be nonzero and finite");
    }
    for (double& x : v) x /= nrm;
  } else {
    v.assign(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  }

  std::vector<double> av(dim);
  std::vector<double> next(dim);
  apply(v, av);
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const double value = dot(v, av);
    const double res = residual_norm(av, v, value);
    result.rayleigh_history.push_back(value);

    const double nrm = norm2(av);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      throw std::runtime_error("power_iteration: iterate vanished or overflowed");
    }
    double step = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      next[k] = av[k] / nrm;
      const double d = next[k] - v[k];
      step += d * d;
    }
    step = std::sqrt(step);
    v.swap(next);
    result.iterations = it;
    apply(v, av);
    if (step < tol || res < tol) {
      result.converged = true;
      break;
    }
  }

  result.value = dot(v, av);
  result.residual = residual_norm(av, v, result.value);
  return result;
}

}  // namespace detail

EigenResult top_eigenvector(const AlignmentOperator& op, double tol, std::size_t max_iters,
                            std::optional<std::span<const double>> start) {
  EigenResult result = power_iteration(op, tol, max_iters, start);
  // Positive A: the Perron vector is positive, so a negative sum means the
  // caller's start pointed the other way.
  const double sum = std::accumulate(result.vector.begin(), result.vector.end(), 0.0);
  if (sum < 0.0) {
    for (double& x : result.vector) x = -x;
  }
  for (double& x : result.vector) x = std::max(x, 0.0);
  return result;
}

}  // namespace gmatch
