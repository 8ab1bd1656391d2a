#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace socprec {

/// Base for every error raised by the library. Each subclass maps onto a
/// stable CLI exit code (see tools/cli.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (lost bracket, discriminant too negative, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The regime (alpha, beta_w) sits on or above the l1 weak threshold, so the
/// generic predictor has no finite answer.
class AboveCharacterizationError : public Error {
 public:
  using Error::Error;
};

/// No sign change of the theta-equation residual was found on the scan grid.
class NoRootError : public NumericalError {
 public:
  NoRootError(const std::string& what, std::vector<double> grid,
              std::vector<double> residuals)
      : NumericalError(what),
        grid_(std::move(grid)),
        residuals_(std::move(residuals)) {}

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> grid_;
  std::vector<double> residuals_;
};

/// A finite-n genie instance has no admissible clipping count.
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

/// The signed SOCP appears to have an empty feasible set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Too many Monte Carlo trials failed, or nothing was run at all.
class AggregateError : public Error {
 public:
  using Error::Error;
};

}  // namespace socprec
