#pragma once

#include <stdexcept>
#include <string>

namespace ruelle {

/// Raised when an enumeration would exceed the configured number of points.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an iterative method misses its residual tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a construction needs regularity information the potential lacks.
class RegularityError : public std::invalid_argument {
 public:
  explicit RegularityError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ruelle
