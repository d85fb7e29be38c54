#pragma once

#include <stdexcept>
#include <string>

namespace qem {

// Bad input: violated preconditions, malformed files, hypothesis failures.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The inputs were admissible but the computation failed to converge or
// produced non-finite values.  The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qem
