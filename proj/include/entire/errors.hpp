#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entire {

/// Operands disagree on variable count or matrix shape.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input that does not match the system grammar. `position` is a byte
/// offset into the text that was handed to the parser.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An exponent vector without integer coordinates in a lattice basis.
class NotInLattice : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A linear system a·u = v that cannot be solved (a lacks full row rank).
class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Floating-point evaluation hit 0^k with k < 0.
class ZeroAtNegativeExponent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certificate that fails its shape or kernel conditions.
class InvalidCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal invariant is broken, e.g. a lifted certificate
/// coefficient that is not proportional to the kernel generator.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace entire
