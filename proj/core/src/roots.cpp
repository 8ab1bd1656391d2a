#include "socprec/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "socprec/error.hpp"

namespace socprec {

SignScan scan_sign_changes(const ScalarFunction& f, double lo, double hi,
                           std::size_t points) {
  if (points < 2) throw DomainError("scan_sign_changes: need at least 2 points");
  SignScan scan;
  scan.grid.resize(points);
  scan.values.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x =
        i + 1 == points ? hi
                        : lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(points - 1);
    scan.grid[i] = x;
    scan.values[i] = f(x);
  }
  for (std::size_t i = 0; i + 1 < points; ++i) {
    const double a = scan.values[i];
    const double b = scan.values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0) {
      scan.brackets.emplace_back(scan.grid[i], scan.grid[i]);
    } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
      scan.brackets.emplace_back(scan.grid[i], scan.grid[i + 1]);
    }
  }
  if (scan.values.back() == 0.0) scan.brackets.emplace_back(hi, hi);
  return scan;
}

double brent_root(const ScalarFunction& f, double lo, double hi, double xtol,
                  int max_iterations) {
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa < 0.0) == (fb < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "brent_root: [" << lo << ", " << hi << "] is not a bracket (f(lo)="
        << fa << ", f(hi)=" << fb << ")";
    throw NumericalError(msg.str());
  }

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;

    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if (!std::isfinite(fb)) {
      throw NumericalError("brent_root: non-finite residual inside bracket");
    }
  }
  return b;
}

}  // namespace socprec
