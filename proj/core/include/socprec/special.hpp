#pragma once

namespace socprec {

/// Inverse of the error function on (-1, 1).
///
/// A single-precision rational/polynomial seed is polished by two Newton
/// steps on erf (on erfc for |p| >= 0.5, where 1 - |p| is exact), which gives
/// roughly 1e-15 relative accuracy across the whole domain.
///
/// Throws DomainError when |p| >= 1 or p is NaN.
double inverse_erf(double p);

}  // namespace socprec
