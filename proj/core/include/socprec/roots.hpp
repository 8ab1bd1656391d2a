#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace socprec {

using ScalarFunction = std::function<double(double)>;

/// Residual profile over a uniform grid plus the sub-intervals on which the
/// residual changes sign. Non-finite samples never form part of a bracket.
struct SignScan {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<std::pair<double, double>> brackets;
};

/// Samples `f` at `points` equally spaced abscissae in [lo, hi].
SignScan scan_sign_changes(const ScalarFunction& f, double lo, double hi,
                           std::size_t points);

/// Brent's method (bisection safeguarded inverse quadratic / secant steps).
///
/// Requires f(lo) and f(hi) to have opposite signs (or one of them to be
/// zero); otherwise throws NumericalError naming the bracket and the values.
double brent_root(const ScalarFunction& f, double lo, double hi,
                  double xtol = 1e-15, int max_iterations = 300);

}  // namespace socprec
