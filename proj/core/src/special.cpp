#include "socprec/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "socprec/error.hpp"

namespace socprec {
namespace {

// Giles' approximation; about 1e-7 relative error, used only as a seed.
double erfinv_seed(double x) {
  double w = -std::log((1.0 - x) * (1.0 + x));
  double p;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  return p * x;
}

}  // namespace

double inverse_erf(double p) {
  if (!(std::fabs(p) < 1.0)) {
    throw DomainError("inverse_erf: argument must lie in (-1, 1), got " +
                      std::to_string(p));
  }
  if (p == 0.0) return p;

  const double a = std::fabs(p);
  const double complement = 1.0 - a;
  const double two_over_sqrt_pi = 2.0 / std::sqrt(std::numbers::pi);

  double t = erfinv_seed(a);
  // Halley steps; the seed degrades in the far tail, so iterate to a fixed point.
  for (int step = 0; step < 12; ++step) {
    const double f = a < 0.5 ? std::erf(t) - a : complement - std::erfc(t);
    const double slope = two_over_sqrt_pi * std::exp(-t * t);
    const double newton = f / slope;
    const double delta = newton / (1.0 + t * newton);
    t -= delta;
    if (std::fabs(delta) <= 1e-16 * t) break;
  }
  return std::copysign(t, p);
}

}  // namespace socprec
