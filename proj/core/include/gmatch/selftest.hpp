#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gmatch/align_operator.hpp"

namespace gmatch {

// Product used by the operator-equivalence suite. Tests swap in a corrupted
// product to check that the suite notices.
using ApplyFn =
    std::function<void(const AlignmentOperator&, std::span<const double>, std::span<double>)>;

struct SelftestOptions {
  std::size_t max_n = 6;  // largest vertex count for the brute-force oracles
  std::uint64_t seed = 0;
  ApplyFn apply;          // empty: AlignmentOperator::apply
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

// Oracle suites: implicit operator vs dense matrix, assignment vs exhaustive
// search, eigen-residual checks, and noiseless planted recovery.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

// Exhaustive oracles shared with the test suites. Both are n! in cost.
double brute_force_assignment_max(std::span<const double> scores, std::size_t n);
double brute_force_quadratic_max(const DenseMatrix& a, std::size_t n);

}  // namespace gmatch
