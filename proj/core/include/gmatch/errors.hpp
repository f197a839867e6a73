#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmatch {

// Operands disagree on vertex count (graphs, permutations, vectors).
class SizeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The match/mismatch balance ratio is undefined because the pair of graphs
// produces no mismatching entries in the alignment matrix.
class DegenerateBalanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gmatch
