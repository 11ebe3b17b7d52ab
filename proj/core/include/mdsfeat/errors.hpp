#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mdsfeat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible shapes (matrix sizes, image sizes, vector lengths).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A value or combination of arguments outside an operation's domain.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A scalar outside its documented range (e.g. similarity not in [0,1]).
class RangeError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed or unreadable input data (files, datasets, matrices).
class DataError : public Error {
public:
  using Error::Error;
};

/// A neighborhood graph split into several components.
class ConnectivityError : public DataError {
public:
  ConnectivityError(const std::string& what, std::vector<std::size_t> component)
      : DataError(what), smallest_component(std::move(component)) {}

  /// Point indices of the smallest disconnected component.
  std::vector<std::size_t> smallest_component;
};

/// Numerical breakdown (non-finite values, indefinite matrices, ...).
class NumericalError : public Error {
public:
  using Error::Error;
  NumericalError(const std::string& what, std::vector<double> iterate)
      : Error(what), last_iterate(std::move(iterate)) {}

  /// Last finite iterate before the failure, when one exists.
  std::vector<double> last_iterate;
};

/// A configuration with no usable geometry (e.g. all points coincident).
class DegenerateConfiguration : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace mdsfeat
