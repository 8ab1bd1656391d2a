#include "socprec/socp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "socprec/error.hpp"

namespace socprec {
namespace {

void check_inputs(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double r,
                  const Eigen::VectorXd& x_tilde) {
  if (A.rows() != y.size()) throw DomainError("socp: A and y have incompatible sizes");
  if (A.cols() < 1 || A.rows() < 1) throw DomainError("socp: empty matrix");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("socp: radius must be positive");
  if (x_tilde.size() != 0 && x_tilde.size() != A.cols()) {
    throw DomainError("socp: x_tilde has wrong length");
  }
}

Eigen::VectorXd project_ball(const Eigen::VectorXd& v, const Eigen::VectorXd& center,
                             double radius) {
  const Eigen::VectorXd d = v - center;
  const double norm = d.norm();
  if (norm <= radius) return v;
  return center + (radius / norm) * d;
}

void shrink(const Eigen::VectorXd& v, double t, bool is_signed, Eigen::VectorXd& out) {
  out.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = v[i];
    if (is_signed) {
      out[i] = a > t ? a - t : 0.0;
    } else {
      out[i] = a > t ? a - t : (a < -t ? a + t : 0.0);
    }
  }
}

void finish(SocpSolution& sol, const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
            const Eigen::VectorXd& x_tilde) {
  sol.objective = sol.x_rec.lpNorm<1>();
  sol.residual_norm = (y - A * sol.x_rec).norm();
  if (x_tilde.size() == 0) {
    sol.w = sol.x_rec;
    sol.f_obj = sol.objective;
  } else {
    sol.w = sol.x_rec - x_tilde;
    sol.f_obj = sol.objective - x_tilde.lpNorm<1>();
  }
}

SocpSolution zero_solution(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& x_tilde) {
  SocpSolution sol;
  sol.x_rec = Eigen::VectorXd::Zero(A.cols());
  sol.converged = true;
  sol.status = "zero-feasible";
  finish(sol, A, y, x_tilde);
  return sol;
}

}  // namespace

double spectral_norm_estimate(const Eigen::MatrixXd& A, int iterations) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(A.cols(), 1.0 / std::sqrt(double(A.cols())));
  double estimate = 0.0;
  for (int i = 0; i < std::max(iterations, 1); ++i) {
    const Eigen::VectorXd w = A.transpose() * (A * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    estimate = std::sqrt(norm);
    v = w / norm;
  }
  return estimate;
}

SocpSolution solve_socp(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double r,
                        bool is_signed, const SocpOptions& opt,
                        const Eigen::VectorXd& x_tilde) {
  check_inputs(A, y, r, x_tilde);
  if (y.norm() <= r) return zero_solution(A, y, x_tilde);

  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();

  // Work with A/s so the graph projection is well conditioned; the ball
  // constraint becomes |y/s - z| <= r/s.
  const double s = spectral_norm_estimate(A, opt.power_iterations);
  if (!(s > 0.0)) throw DomainError("socp: matrix is zero");
  const Eigen::MatrixXd As = A / s;
  const Eigen::VectorXd center = y / s;
  const double radius = r / s;

  // Projection onto {z = As x}: with K = As As^T,
  //   z = (I + K)^{-1} (As c + K d),   x = c + As^T (d - z).
  Eigen::MatrixXd K = As * As.transpose();
  const Eigen::LLT<Eigen::MatrixXd> factor(Eigen::MatrixXd::Identity(m, m) + K);
  if (factor.info() != Eigen::Success) throw NumericalError("socp: factorization failed");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), z = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd ux = Eigen::VectorXd::Zero(n), uz = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd xh(n), zh(m), xr(n), zr(m), cx(n), dz(m), x_prev(n), z_prev(m);

  double rho = opt.rho;
  const double relax = opt.over_relaxation;
  const double eps_abs = opt.eps_abs * std::sqrt(static_cast<double>(n));
  const double dim_scale = std::sqrt(static_cast<double>(n + m));

  SocpSolution sol;
  sol.status = "max-iterations";

  double window_dual = -1.0;
  double window_primal = -1.0;
  int window_start = 0;

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    shrink(x - ux, 1.0 / rho, is_signed, xh);
    zh = project_ball(z - uz, center, radius);

    xr = relax * xh + (1.0 - relax) * x;
    zr = relax * zh + (1.0 - relax) * z;

    x_prev = x;
    z_prev = z;
    cx = xr + ux;
    dz = zr + uz;
    z = factor.solve(As * cx + K * dz);
    x = cx + As.transpose() * (dz - z);

    ux += xr - x;
    uz += zr - z;

    const double primal = std::sqrt((xh - x).squaredNorm() + (zh - z).squaredNorm());
    const double dual =
        rho * std::sqrt((x - x_prev).squaredNorm() + (z - z_prev).squaredNorm());
    const double eps_pri =
        eps_abs * dim_scale / std::sqrt(double(n)) +
        opt.eps_rel * std::max(std::sqrt(xh.squaredNorm() + zh.squaredNorm()),
                               std::sqrt(x.squaredNorm() + z.squaredNorm()));
    const double dual_norm = rho * std::sqrt(ux.squaredNorm() + uz.squaredNorm());
    const double eps_dual = eps_abs * dim_scale / std::sqrt(double(n)) + opt.eps_rel * dual_norm;

    if (primal <= eps_pri && dual <= eps_dual) {
      const double feas = (center - As * xh).norm();
      if (feas <= radius * (1.0 + 1e-6)) {
        sol.converged = true;
        sol.status = "converged";
        ++it;
        break;
      }
    }

    if (is_signed && opt.divergence_window > 0) {
      if (it - window_start >= opt.divergence_window) {
        if (window_dual > 0.0 && dual_norm > 1.5 * window_dual && primal > 0.9 * window_primal) {
          throw InfeasibleError("solve_socp: signed problem appears infeasible (dual grew from " +
                                std::to_string(window_dual) + " to " +
                                std::to_string(dual_norm) + " while the primal residual stalled)");
        }
        window_start = it;
        window_dual = dual_norm;
        window_primal = primal;
      } else if (window_dual < 0.0) {
        window_dual = dual_norm;
        window_primal = primal;
      }
    }

    if (opt.adaptive_rho && it % 10 == 9) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        ux /= 2.0;
        uz /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        ux *= 2.0;
        uz *= 2.0;
      }
    }
  }

  sol.x_rec = xh;
  sol.iterations = it;
  finish(sol, A, y, x_tilde);
  if (opt.compute_certificate) {
    const auto ref = reference_solve(A, y, r, is_signed);
    sol.certificate_gap = std::fabs(sol.objective - ref.objective) / std::max(1.0, ref.objective);
  }
  return sol;
}

SocpSolution reference_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double r,
                             bool is_signed, const ReferenceOptions& opt,
                             const Eigen::VectorXd& x_tilde) {
  check_inputs(A, y, r, x_tilde);
  if (y.norm() <= r) return zero_solution(A, y, x_tilde);

  const Eigen::Index n = A.cols();
  const Eigen::Index m = A.rows();
  const double norm_a = 1.02 * spectral_norm_estimate(A, 200);
  const double tau = 1.0 / norm_a;
  const double sigma = 1.0 / norm_a;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), x_old(n), v(n);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(m), p_old(m), q(m);
  Eigen::VectorXd Ax = Eigen::VectorXd::Zero(m), Ax_old(m), Atp = Eigen::VectorXd::Zero(n),
                  Atp_old(n);

  SocpSolution sol;
  sol.status = "max-iterations";
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    // Dual step on the conjugate of the ball indicator (Moreau decomposition).
    p_old = p;
    q = p + sigma * (2.0 * Ax - Ax_old);
    p = q - sigma * project_ball(q / sigma, y, r);

    x_old = x;
    Atp_old = Atp;
    Atp = A.transpose() * p;
    v = x - tau * Atp;
    shrink(v, tau, is_signed, x);
    Ax_old = Ax;
    Ax = A * x;

    const double primal_res = ((x_old - x) / tau - (Atp_old - Atp)).norm();
    const double dual_res = ((p_old - p) / sigma - (Ax_old - Ax)).norm();
    const double scale = 1.0 + std::max({x.norm(), p.norm(), Atp.norm(), Ax.norm()});
    if (it > 10 && primal_res <= opt.tolerance * scale && dual_res <= opt.tolerance * scale) {
      sol.converged = true;
      sol.status = "converged";
      ++it;
      break;
    }
  }
  sol.x_rec = x;
  sol.iterations = it;
  finish(sol, A, y, x_tilde);
  return sol;
}

OptimalityDiagnostics optimality_diagnostics(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                                             double r, const Eigen::VectorXd& x, bool is_signed) {
  OptimalityDiagnostics d;
  const Eigen::VectorXd resid = y - A * x;
  const double rn = resid.norm();
  d.residual_ratio = rn / r;
  d.slack = r - rn;
  const double x_max = x.lpNorm<Eigen::Infinity>();

  if (rn < r * (1.0 - 1e-6)) {
    // Inactive ball constraint: optimality forces x = 0 and a zero multiplier.
    d.constraint_active = false;
    d.multiplier = 0.0;
    d.violation = x_max;
    d.complementarity = 0.0;
    return d;
  }
  d.constraint_active = true;
  const Eigen::VectorXd q = A.transpose() * resid;
  const double support_tol = 1e-9 * std::max(1.0, x_max);

  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i]) > support_tol) {
      num += (x[i] > 0.0 ? 1.0 : -1.0) * q[i];
      den += q[i] * q[i];
    }
  }
  const double mu = den > 0.0 ? num / den : 1.0 / std::max(q.lpNorm<Eigen::Infinity>(), 1e-300);
  double violation = mu < 0.0 ? -mu : 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double g = mu * q[i];
    if (std::fabs(x[i]) > support_tol) {
      violation = std::max(violation, std::fabs(g - (x[i] > 0.0 ? 1.0 : -1.0)));
    } else {
      const double excess = is_signed ? g - 1.0 : std::fabs(g) - 1.0;
      violation = std::max(violation, excess);
    }
  }
  d.violation = violation;
  d.multiplier = mu * rn;
  d.complementarity = d.multiplier * d.slack;
  return d;
}

}  // namespace socprec
