#pragma once

#include <stdexcept>
#include <string>

namespace cdg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration or argument.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Geometric or algebraic degeneracy (degenerate triangle, non-SPD local matrix).
class DegenerateError : public Error {
public:
  using Error::Error;
};

class SolverError : public Error {
public:
  enum class Kind { NotConverged, Indefinite };

  SolverError(Kind kind, int iterations, double relative_residual, const std::string& what)
      : Error(what), kind_(kind), iterations_(iterations), residual_(relative_residual) {}

  Kind kind() const noexcept { return kind_; }
  int iterations() const noexcept { return iterations_; }
  double relative_residual() const noexcept { return residual_; }

private:
  Kind kind_;
  int iterations_;
  double residual_;
};

}  // namespace cdg
