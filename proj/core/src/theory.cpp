#include "socprec/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "socprec/error.hpp"
#include "socprec/roots.hpp"
#include "socprec/special.hpp"

namespace socprec {
namespace {

constexpr double kEdge = 1e-9;
constexpr double kDiscClamp = 1e-12;
constexpr std::size_t kThetaScanPoints = 512;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double std_normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// Quadratic in nu whose smaller positive root drives the theta equation.
struct NuQuadratic {
  double P = 0.0;
  double Q = 0.0;
  double constant = 0.0;  // B^2 + theta
  double disc = 0.0;
};

NuQuadratic nu_quadratic(const ScalarCoefficients& c, const RecoveryRegime& regime) {
  NuQuadratic q;
  q.Q = c.A * c.A - regime.alpha + c.D;
  q.P = c.A * c.B - c.C;
  q.constant = c.B * c.B + c.theta;
  q.disc = q.P * q.P - q.constant * q.Q;
  return q;
}

// Smaller root written as constant/(-P + sqrt(disc)); same value as
// (-P - sqrt(disc))/Q but without the pole where Q changes sign.
double minus_root(const NuQuadratic& q) {
  double disc = q.disc;
  if (disc < 0.0) {
    if (disc < -kDiscClamp) return kNaN;
    disc = 0.0;
  }
  if (std::fabs(q.Q) < 1e-12) {
    if (q.P >= 0.0) return kNaN;
    return -q.constant / (2.0 * q.P);
  }
  const double denom = -q.P + std::sqrt(disc);
  if (!(denom > 0.0)) return kNaN;
  return q.constant / denom;
}

double clamp_theta(double theta, const RecoveryRegime& regime) {
  if (!(theta >= regime.beta_w && theta <= 1.0)) {
    throw DomainError("scalar_coeffs: theta=" + fmt(theta) + " outside [beta_w=" +
                      fmt(regime.beta_w) + ", 1]");
  }
  const double lo = regime.beta_w + kEdge;
  const double hi = 1.0 - kEdge;
  return theta < lo ? lo : (theta > hi ? hi : theta);
}

void require_below_threshold(const RecoveryRegime& regime, double alpha_w) {
  if (!(regime.alpha > alpha_w)) {
    throw AboveCharacterizationError(
        "regime (alpha=" + fmt(regime.alpha) + ", beta_w=" + fmt(regime.beta_w) +
        ") is not below the weak threshold alpha_w=" + fmt(alpha_w));
  }
}

}  // namespace

void validate_regime(const RecoveryRegime& regime) {
  const auto& r = regime;
  if (!(r.alpha > 0.0 && r.alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1], got " + fmt(r.alpha));
  }
  if (!(r.beta_w > 0.0 && r.beta_w < r.alpha)) {
    throw DomainError("beta_w must lie in (0, alpha), got " + fmt(r.beta_w));
  }
  if (!(r.sigma > 0.0) || !std::isfinite(r.sigma)) {
    throw DomainError("sigma must be positive, got " + fmt(r.sigma));
  }
  if (!(r.r_sc > 0.0) || !std::isfinite(r.r_sc)) {
    throw DomainError("scaled radius must be positive, got " + fmt(r.r_sc));
  }
}

double weak_threshold_residual(double alpha, double beta_w, bool is_signed) {
  const double p = (1.0 - alpha) / (1.0 - beta_w);
  if (is_signed) {
    const double t = inverse_erf(2.0 * p - 1.0);
    return (1.0 - beta_w) / std::sqrt(2.0 * std::numbers::pi) * std::exp(-t * t) / alpha -
           std::numbers::sqrt2 * t;
  }
  const double t = inverse_erf(p);
  return (1.0 - beta_w) * std::sqrt(2.0 / std::numbers::pi) * std::exp(-t * t) / alpha -
         std::numbers::sqrt2 * t;
}

double l1_weak_threshold(double beta_w, bool is_signed) {
  if (!(beta_w > 0.0 && beta_w < 1.0)) {
    throw DomainError("l1_weak_threshold: beta_w must lie in (0, 1), got " + fmt(beta_w));
  }
  // erfinv is only defined for alpha > beta_w, so the bracket starts there.
  const double lo = beta_w + kEdge;
  const double hi = 1.0 - kEdge;
  auto f = [&](double a) { return weak_threshold_residual(a, beta_w, is_signed); };
  return brent_root(f, lo, hi, 1e-16);
}

double weak_threshold_beta(double alpha_w, bool is_signed) {
  if (!(alpha_w > 0.0 && alpha_w < 1.0)) {
    throw DomainError("weak_threshold_beta: alpha_w must lie in (0, 1), got " +
                      fmt(alpha_w));
  }
  auto f = [&](double b) { return l1_weak_threshold(b, is_signed) - alpha_w; };
  // Below this beta the threshold sits within kEdge of beta and cannot be bracketed.
  constexpr double kBetaFloor = 1e-6;
  const double hi = alpha_w * (1.0 - 1e-12);
  if (!(hi > kBetaFloor) || f(kBetaFloor) > 0.0) {
    throw DomainError("weak_threshold_beta: alpha_w " + fmt(alpha_w) +
                      " is below the resolvable range");
  }
  return brent_root(f, kBetaFloor, hi, 1e-15);
}

ScalarCoefficients scalar_coeffs(double theta, const RecoveryRegime& regime) {
  validate_regime(regime);
  ScalarCoefficients c;
  c.theta = clamp_theta(theta, regime);
  const double beta = regime.beta_w;
  const double p = (1.0 - c.theta) / (1.0 - beta);
  double tau;
  double mass;
  if (regime.is_signed) {
    tau = std::numbers::sqrt2 * inverse_erf(2.0 * p - 1.0);
    mass = 1.0 - beta;
  } else {
    tau = std::numbers::sqrt2 * inverse_erf(p);
    mass = 2.0 * (1.0 - beta);
  }
  const double phi = std_normal_pdf(tau);
  c.F = tau;
  c.C = mass * phi;
  c.D = c.theta + mass * tau * phi;
  c.A = regime.sigma * (regime.alpha - c.D) / regime.r_sc;
  c.B = regime.sigma * c.C / regime.r_sc;
  return c;
}

double theta_discriminant(double theta, const RecoveryRegime& regime) {
  return nu_quadratic(scalar_coeffs(theta, regime), regime).disc;
}

double theta_residual(double theta, const RecoveryRegime& regime) {
  const auto c = scalar_coeffs(theta, regime);
  const double nu = minus_root(nu_quadratic(c, regime));
  if (!std::isfinite(nu) || !(c.A * nu + c.B > 0.0)) return kNaN;
  return c.F * nu - 1.0;
}

ThetaSolveResult solve_theta_hat_detailed(const RecoveryRegime& regime) {
  validate_regime(regime);
  require_below_threshold(regime, l1_weak_threshold(regime.beta_w, regime.is_signed));

  const double lo = regime.beta_w + kEdge;
  const double hi = 1.0 - kEdge;
  auto f = [&](double t) { return theta_residual(t, regime); };
  const auto scan = scan_sign_changes(f, lo, hi, kThetaScanPoints);
  if (scan.brackets.empty()) {
    throw NoRootError("solve_theta_hat: no sign change of the theta residual on [" +
                          fmt(lo) + ", " + fmt(hi) + "]",
                      scan.grid, scan.values);
  }

  const auto [a, b] = scan.brackets.front();
  for (double end : {a, b}) {
    if (theta_discriminant(end, regime) < -kDiscClamp) {
      throw NumericalError("solve_theta_hat: negative discriminant at bracket end theta=" +
                           fmt(end));
    }
  }
  ThetaSolveResult out;
  out.theta_hat = a == b ? a : brent_root(f, a, b, 1e-16);
  out.residual = f(out.theta_hat);
  out.discriminant = theta_discriminant(out.theta_hat, regime);
  out.root_count = scan.brackets.size();
  return out;
}

double solve_theta_hat(const RecoveryRegime& regime) {
  return solve_theta_hat_detailed(regime).theta_hat;
}

TheoryPoint predict_generic(const RecoveryRegime& regime) {
  validate_regime(regime);
  TheoryPoint tp;
  tp.regime = regime;
  tp.alpha_w = l1_weak_threshold(regime.beta_w, regime.is_signed);
  require_below_threshold(regime, tp.alpha_w);
  tp.r_opt_sc = regime.sigma * std::sqrt(regime.alpha - tp.alpha_w);

  const auto solved = solve_theta_hat_detailed(regime);
  tp.theta_hat = solved.theta_hat;
  tp.theta_root_count = solved.root_count;

  const auto c = scalar_coeffs(tp.theta_hat, regime);
  const double nu = minus_root(nu_quadratic(c, regime));
  const double num = nu * nu * c.D - 2.0 * nu * c.C + tp.theta_hat;
  const double radicand = regime.alpha * nu * nu - num;
  if (!(radicand > 0.0) || !(num >= 0.0)) {
    throw AboveCharacterizationError("predict_generic: nonpositive radicand " +
                                     fmt(radicand) + " at theta=" + fmt(tp.theta_hat));
  }
  tp.nu_gen = nu;
  tp.w_norm = regime.sigma * std::sqrt(num / radicand);
  tp.xi_prim_limit = regime.sigma * std::sqrt(radicand) - nu * regime.r_sc;
  return tp;
}

double optimal_radius(double alpha, double beta_w, double sigma, bool is_signed) {
  validate_regime({alpha, beta_w, sigma, 1.0, is_signed});
  const double alpha_w = l1_weak_threshold(beta_w, is_signed);
  if (!(alpha > alpha_w)) {
    throw AboveCharacterizationError("optimal_radius: alpha=" + fmt(alpha) +
                                     " does not exceed alpha_w=" + fmt(alpha_w));
  }
  return sigma * std::sqrt(alpha - alpha_w);
}

double optimal_rho(double alpha, double beta_w, bool is_signed) {
  const double r = optimal_radius(alpha, beta_w, 1.0, is_signed);
  return std::sqrt((alpha - r * r) / (r * r));
}

double contour_beta(double alpha, double rho, bool is_signed) {
  if (!(rho > 0.0)) throw DomainError("contour_beta: rho must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("contour_beta: alpha outside (0, 1]");
  return weak_threshold_beta(alpha * rho * rho / (1.0 + rho * rho), is_signed);
}

std::string to_string(ContourMode mode) {
  return mode == ContourMode::OptimalRadius ? "optimal-radius" : "sqrt-alpha-radius";
}

ContourMode parse_contour_mode(const std::string& text) {
  if (text == "optimal-radius" || text == "opt") return ContourMode::OptimalRadius;
  if (text == "sqrt-alpha-radius" || text == "sqrt-alpha") return ContourMode::SqrtAlphaRadius;
  throw DomainError("unknown contour mode '" + text + "'");
}

namespace {

ContourPoint sqrt_alpha_point(double rho, double beta_w, bool is_signed) {
  ContourPoint pt{rho, beta_w, kNaN, ContourMode::SqrtAlphaRadius, false, {}};
  const double alpha_w = l1_weak_threshold(beta_w, is_signed);
  auto gap = [&](double alpha) {
    try {
      return predict_generic({alpha, beta_w, 1.0, std::sqrt(alpha), is_signed}).w_norm - rho;
    } catch (const Error&) {
      return kNaN;
    }
  };
  // Quadratic spacing concentrates samples near alpha_w, where w blows up.
  constexpr int kSamples = 96;
  double prev_a = kNaN;
  double prev_g = kNaN;
  for (int j = 1; j <= kSamples; ++j) {
    const double s = static_cast<double>(j) / kSamples;
    const double a = j == kSamples ? 1.0 : alpha_w + (1.0 - alpha_w) * s * s;
    const double g = gap(a);
    if (g == 0.0) {
      pt.alpha = a;
      pt.reached = true;
      return pt;
    }
    if (std::isfinite(prev_g) && std::isfinite(g) && (prev_g > 0.0) != (g > 0.0)) {
      pt.alpha = brent_root(gap, prev_a, a, 1e-14);
      pt.reached = std::fabs(gap(pt.alpha)) < 1e-8;
      if (!pt.reached) pt.note = "root polish did not reach 1e-8";
      return pt;
    }
    prev_a = a;
    prev_g = g;
  }
  pt.note = "error ratio rho not attained for alpha in (alpha_w, 1]";
  return pt;
}

}  // namespace

std::vector<ContourPoint> contour(double rho, const std::vector<double>& beta_grid,
                                  ContourMode mode, bool is_signed) {
  if (!(rho > 0.0)) throw DomainError("contour: rho must be positive");
  std::vector<ContourPoint> out;
  out.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    if (!(beta > 0.0 && beta < 1.0)) {
      throw DomainError("contour: beta grid value " + fmt(beta) + " outside (0, 1)");
    }
    if (mode == ContourMode::OptimalRadius) {
      ContourPoint pt{rho, beta, kNaN, mode, false, {}};
      const double alpha = l1_weak_threshold(beta, is_signed) * (1.0 + rho * rho) / (rho * rho);
      if (alpha <= 1.0) {
        pt.alpha = alpha;
        pt.reached = true;
      } else {
        pt.note = "required alpha exceeds 1";
      }
      out.push_back(pt);
    } else {
      out.push_back(sqrt_alpha_point(rho, beta, is_signed));
    }
  }
  return out;
}

}  // namespace socprec
