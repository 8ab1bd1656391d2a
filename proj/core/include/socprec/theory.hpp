#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace socprec {

/// Scaled description of a recovery problem: m = alpha*n measurements,
/// k = beta_w*n nonzeros, noise level sigma and radius r = r_sc*sqrt(n).
struct RecoveryRegime {
  double alpha = 0.5;
  double beta_w = 0.1;
  double sigma = 1.0;
  double r_sc = 0.70710678118654752;
  bool is_signed = false;
};

/// Throws DomainError unless 0 < beta_w < alpha <= 1, sigma > 0, r_sc > 0.
void validate_regime(const RecoveryRegime& regime);

struct ScalarCoefficients {
  double theta = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double F = 0.0;
};

struct ThetaSolveResult {
  double theta_hat = 0.0;
  double residual = 0.0;
  double discriminant = 0.0;
  std::size_t root_count = 0;
};

struct TheoryPoint {
  RecoveryRegime regime;
  double theta_hat = 0.0;
  double nu_gen = 0.0;
  double w_norm = 0.0;
  double xi_prim_limit = 0.0;
  double alpha_w = 0.0;
  double r_opt_sc = 0.0;
  std::size_t theta_root_count = 0;
};

/// Left-hand side of the weak-threshold equation; zero at alpha = alpha_w.
double weak_threshold_residual(double alpha, double beta_w, bool is_signed);

/// Weak threshold alpha_w(beta_w) of l1 (or nonnegative l1) recovery.
double l1_weak_threshold(double beta_w, bool is_signed);

/// Inverse of l1_weak_threshold on (0, 1): returns beta with alpha_w(beta) = alpha_w.
double weak_threshold_beta(double alpha_w, bool is_signed);

/// Coefficients A..F at theta. Endpoints beta_w and 1 are nudged 1e-9 inside;
/// theta outside [beta_w, 1] throws DomainError.
ScalarCoefficients scalar_coeffs(double theta, const RecoveryRegime& regime);

/// Discriminant of the nu quadratic at theta.
double theta_discriminant(double theta, const RecoveryRegime& regime);

/// F(theta)*nu(theta) - 1 where nu is the smaller positive root of the
/// quadratic. NaN where the root is undefined.
double theta_residual(double theta, const RecoveryRegime& regime);

ThetaSolveResult solve_theta_hat_detailed(const RecoveryRegime& regime);
double solve_theta_hat(const RecoveryRegime& regime);

TheoryPoint predict_generic(const RecoveryRegime& regime);

/// sigma*sqrt(alpha - alpha_w). Throws AboveCharacterizationError when
/// alpha <= alpha_w.
double optimal_radius(double alpha, double beta_w, double sigma, bool is_signed);

/// Error-to-noise ratio at the optimal radius, sqrt(alpha_w/(alpha-alpha_w)).
double optimal_rho(double alpha, double beta_w, bool is_signed);

/// beta_w on the rho contour at the given alpha (optimal radius).
double contour_beta(double alpha, double rho, bool is_signed);

enum class ContourMode { OptimalRadius, SqrtAlphaRadius };

std::string to_string(ContourMode mode);
ContourMode parse_contour_mode(const std::string& text);

struct ContourPoint {
  double rho = 0.0;
  double beta_w = 0.0;
  double alpha = 0.0;
  ContourMode mode = ContourMode::OptimalRadius;
  bool reached = false;
  std::string note;
};

/// Points (alpha, beta_w) with error-to-noise ratio rho. Unreachable grid
/// points come back with reached = false and a note instead of throwing.
std::vector<ContourPoint> contour(double rho, const std::vector<double>& beta_grid,
                                  ContourMode mode, bool is_signed);

}  // namespace socprec
