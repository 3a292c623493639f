#pragma once

#include <stdexcept>
#include <string>

namespace increg {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid option, parameter, or configuration value supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV data or a JSON config file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a Soft-penalty result was given something else.
class WrongPenaltyKind : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Shapes of the supplied arrays do not agree.
class DimensionMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Numerical failure while processing structurally valid input.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Design matrix is rank deficient (or has fewer rows than columns).
class SingularDesign : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Sample second-moment matrix cannot be inverted.
class SingularGram : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Linear map supplied to a region test does not have full row rank.
class RankDeficientMap : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A row subset required by an estimator is empty or too small.
class EmptySubset : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A data-driven bound or interval collapsed (zero or non-finite width).
class DegenerateInterval : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace increg
