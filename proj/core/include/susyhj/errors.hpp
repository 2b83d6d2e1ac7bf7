#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace susyhj {

/// Root of the library's error hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Expression layer
// ---------------------------------------------------------------------------

/// Malformed expression text. `offset` is the byte position where parsing
/// stopped making sense (0-based, may equal text length for truncated input).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier that is neither the variable q, a declared constant, nor a
/// built-in function name.
class UnknownIdentifierError : public Error {
 public:
  using Error::Error;
};

/// Evaluation reached a named constant with no bound value.
class UnboundConstantError : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the function's domain (sqrt of a negative, division by
/// zero, non-finite result).
class EvalDomainError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Grassmann algebra
// ---------------------------------------------------------------------------

/// Operands live in algebras with different generator counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Conjugation requires generators paired as (2k, 2k+1); the algebra has an
/// odd number of generators.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// An argument had the wrong Grassmann parity (or a soul that fails the
/// order-2 nilpotency required by function lifting).
class ParityError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Numerics (quadrature, root finding, ODE stepping, constraint solve)
// ---------------------------------------------------------------------------

/// Base for runtime numerical failures; the CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A quadrature or trajectory computation approached a turning point, where
/// 2E - V^2(x) falls below the guard threshold.
class TurningPointError : public NumericError {
 public:
  TurningPointError(const std::string& what, double x)
      : NumericError(what + " (x = " + std::to_string(x) + ")"), x_(x) {}
  double offending_x() const { return x_; }

 private:
  double x_;
};

/// A requested time lies outside the guarded monotone window of a branch.
class WindowError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Adaptive ODE step size underflowed.
class StiffnessError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An internal algebraic invariant failed (e.g. singular constraint matrix).
class InternalConsistencyError : public NumericError {
 public:
  using NumericError::NumericError;
};

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

/// Unusable configuration input (missing file, JSON syntax, bad expression).
/// The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid config whose field values fail validation.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace susyhj
