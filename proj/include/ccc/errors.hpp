#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

/// Index or shift outside the valid range of a domain or sequence.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A digit or point that violates the block bounds of a domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction spec that fails validation (bad permutation, bad J set, wrong arity...).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands with incompatible modulus, length or matrix shape.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ccc
