#pragma once

#include <stdexcept>

namespace slemma {

/// Invalid input: dimension mismatch, malformed exponent, wrong parity, etc.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request has no meaningful answer for the given data (e.g. the degree
/// of the zero polynomial, or an image set with no nonzero samples).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A term is not continuously differentiable at the coordinate hyperplanes.
class DifferentiationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A simulated trajectory left the ball of radius 1e6.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slemma
