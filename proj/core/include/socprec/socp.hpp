#pragma once

#include <string>

#include <Eigen/Dense>

namespace socprec {

struct SocpOptions {
  double eps_abs = 1e-8;  // multiplied by sqrt(n)
  double eps_rel = 1e-6;
  int max_iterations = 50000;
  double over_relaxation = 1.8;
  double rho = 1.0;
  bool adaptive_rho = true;
  int power_iterations = 20;
  /// Window (iterations) over which a signed solve must show a growing dual
  /// and a stalled primal residual to be declared infeasible.
  int divergence_window = 5000;
  /// Also run reference_solve and record the relative objective gap.
  bool compute_certificate = false;
};

struct ReferenceOptions {
  double tolerance = 1e-8;
  int max_iterations = 400000;
};

struct SocpSolution {
  Eigen::VectorXd x_rec;
  Eigen::VectorXd w;          // x_rec - x_tilde (x_rec when no truth was given)
  double objective = 0.0;     // |x_rec|_1
  double f_obj = 0.0;         // |x_rec|_1 - |x_tilde|_1
  double residual_norm = 0.0; // |y - A x_rec|
  int iterations = 0;
  bool converged = false;
  double certificate_gap = 0.0;
  std::string status;
};

/// min |x|_1 s.t. |y - A x| <= r (and x >= 0 when is_signed), solved with
/// over-relaxed graph-form ADMM. Returns x = 0 exactly when |y| <= r.
/// Hitting the iteration cap yields converged = false; a signed problem whose
/// iterates diverge throws InfeasibleError.
SocpSolution solve_socp(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double r,
                        bool is_signed, const SocpOptions& options = {},
                        const Eigen::VectorXd& x_tilde = Eigen::VectorXd());

/// Same program solved by a primal-dual hybrid gradient method. Meant for
/// small instances as an independent check on solve_socp.
SocpSolution reference_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double r,
                             bool is_signed, const ReferenceOptions& options = {},
                             const Eigen::VectorXd& x_tilde = Eigen::VectorXd());

struct OptimalityDiagnostics {
  double residual_ratio = 0.0;      // |y - A x| / r
  double violation = 0.0;           // subgradient-condition violation score
  double multiplier = 0.0;          // constraint multiplier estimate
  double slack = 0.0;               // r - |y - A x|
  double complementarity = 0.0;     // multiplier * slack
  bool constraint_active = false;
};

OptimalityDiagnostics optimality_diagnostics(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                                             double r, const Eigen::VectorXd& x, bool is_signed);

/// Largest singular value estimate from power iteration on A^T A.
double spectral_norm_estimate(const Eigen::MatrixXd& A, int iterations);

}  // namespace socprec
