#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

// Bad shapes, out-of-range parameters, malformed input files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation hit a singular pivot, a dependent subspace, or a polynomial
// that vanished on every sample.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A block-structure claim about a flattening did not hold.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace koszul
