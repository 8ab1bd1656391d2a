#pragma once

#include <cmath>
#include <string>

#include "socprec/error.hpp"

namespace socprec {

struct ProblemDims {
  long n = 0;
  long m = 0;
  long k = 0;
};

/// m = round(alpha*n), k = round(beta_w*n); requires 1 <= m and 1 <= k < n.
inline ProblemDims problem_dims(long n, double alpha, double beta_w) {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
  ProblemDims d{n, std::lround(alpha * static_cast<double>(n)),
                std::lround(beta_w * static_cast<double>(n))};
  if (d.m < 1 || d.m > n) {
    throw DomainError("round(alpha*n)=" + std::to_string(d.m) + " is not a valid m");
  }
  if (d.k < 1 || d.k >= n) {
    throw DomainError("round(beta_w*n)=" + std::to_string(d.k) + " is not a valid k");
  }
  return d;
}

}  // namespace socprec
