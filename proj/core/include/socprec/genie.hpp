#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "socprec/stats.hpp"
#include "socprec/theory.hpp"

namespace socprec {

/// Sorted dual coordinates for one Gaussian sample (g, h).
///
/// The first n-k entries of h_bar are |h_i| (general) or h_i (signed) in
/// nondecreasing order, ties kept in index order; the last k entries are
/// copied unchanged. suffix_h2[c] and suffix_hz[c] hold the sums of
/// h_bar_i^2 and h_bar_i*z2_i over i >= c (size n+1, last entry 0).
struct SortedDualData {
  Eigen::VectorXd h_bar;
  Eigen::VectorXd z2;
  Eigen::Index k = 0;
  double g_norm_sq = 0.0;
  Eigen::VectorXd suffix_h2;
  Eigen::VectorXd suffix_hz;
  bool is_signed = false;

  Eigen::Index n() const { return h_bar.size(); }
};

SortedDualData build_sorted(const Eigen::VectorXd& h, const Eigen::VectorXd& g,
                            Eigen::Index k, bool is_signed);

struct GenieSolution {
  Eigen::Index c_gen = 0;
  double nu_gen = 0.0;
  Eigen::VectorXd lambda;
  double w_norm = 0.0;
  double xi_value = 0.0;
  double a_gen = 0.0;
  double b_gen = 0.0;
};

/// Closed-form maximizer of the dual program: scans the clipping count c and
/// keeps the largest one whose root nu satisfies the sandwich condition.
/// Throws DegenerateInstanceError when no c qualifies.
GenieSolution genie_solve(const SortedDualData& data, double sigma, double r);

/// Direct evaluation sigma*sqrt(|g|^2 nu^2 - |nu h_bar - z2 + lambda|^2) - nu*r.
/// Throws NumericalError when the radicand is not positive.
double genie_objective(const SortedDualData& data, double nu, const Eigen::VectorXd& lambda,
                       double sigma, double r);

struct GenieStats {
  long n = 0;
  long m = 0;
  long k = 0;
  long trials = 0;
  SampleStat nu_gen;
  SampleStat w_norm;
  SampleStat xi_over_sqrt_n;
  FailureLog failures;
};

/// Solves `trials` fresh instances with r = r_sc*sqrt(n). Throws
/// AggregateError if trials < 1 or more than 10% of trials are degenerate.
GenieStats genie_montecarlo(const RecoveryRegime& regime, long n, long trials,
                            std::uint64_t seed, int threads = 0);

}  // namespace socprec
