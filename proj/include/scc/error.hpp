#pragma once

#include <stdexcept>
#include <string>

namespace scc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Extents of two operands disagree, or a buffer does not match its shape.
class ShapeError : public Error
{
public:
  using Error::Error;
};

/// An input lies outside the domain of the operation (wrong domain tag,
/// zero-norm reference, all-zero data).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// A configuration value violates its stated range.
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// The iterative solver produced non-finite values.
class DivergenceError : public Error
{
public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error
{
public:
  using Error::Error;
};

/// File exists but its contents violate the container format.
class FormatError : public Error
{
public:
  using Error::Error;
};

} // namespace scc
