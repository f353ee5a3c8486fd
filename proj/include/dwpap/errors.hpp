#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwpap {

// Raised when the numerical engine cannot deliver a result: quadrature that
// fails to converge within the refinement budget, non-finite values in a spot
// that has no log-domain fallback, or a broken internal invariant.
// The command line tool maps this to exit code 3.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in the weight expression language or in the trig mini syntax.
// Carries the byte offset of the failure and the set of tokens that would
// have been accepted at that point.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected)
      : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace dwpap
