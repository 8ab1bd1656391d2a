#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "socprec/dims.hpp"
#include "socprec/socp.hpp"
#include "socprec/stats.hpp"
#include "socprec/theory.hpp"

namespace socprec {

enum class RadiusMode { SqrtM, Opt, Scaled };

/// How the SOCP radius is chosen: sigma*sqrt(m), the optimal radius, or
/// sigma*sqrt(c*m) with c in (0, 1].
struct RadiusSpec {
  RadiusMode mode = RadiusMode::SqrtM;
  double c = 1.0;
};

/// Accepts "sqrt-m", "opt" and "scaled:<c>".
RadiusSpec parse_radius(const std::string& text);
std::string to_string(const RadiusSpec& spec);

/// Scaled radius r/sqrt(n) used by the theory for this spec.
double scaled_radius(const RadiusSpec& spec, double alpha, double beta_w, double sigma,
                     bool is_signed);

/// Finite-n radius: sigma*sqrt(m), sqrt(n)*optimal_radius, or sigma*sqrt(c*m).
double resolve_radius(const RadiusSpec& spec, const ProblemDims& dims, double alpha,
                      double beta_w, double sigma, bool is_signed);

/// Default nonzero amplitude 40/sqrt(n).
double default_spike(long n);

struct ProblemInstance {
  Eigen::MatrixXd A;
  Eigen::VectorXd x_tilde;
  Eigen::VectorXd v;
  Eigen::VectorXd y;
  double r = 0.0;
  double sigma = 1.0;
  ProblemDims dims;
  std::uint64_t seed = 0;
  std::uint32_t trial = 0;
};

/// Random instance: A with i.i.d. N(0,1) entries, x_tilde with `spike` on the
/// last k coordinates, v ~ N(0, sigma^2). Deterministic in (seed, trial).
ProblemInstance gen_instance(long n, double alpha, double beta_w, double sigma, double spike,
                             const RadiusSpec& radius, bool is_signed, std::uint64_t seed,
                             std::uint32_t trial);

struct ExperimentConfig {
  double alpha = 0.5;
  double beta_w = 0.1;
  double sigma = 1.0;
  bool is_signed = false;
  RadiusSpec radius;
  long n = 400;
  long trials = 200;
  bool run_socp = true;
  bool run_genie = false;
  std::uint64_t seed = 1;
  double spike = 0.0;  // <= 0 selects default_spike(n)
  int threads = 0;
  bool keep_per_trial = false;
  SocpOptions socp;
};

struct TrialRecord {
  std::uint32_t trial = 0;
  std::map<std::string, double> values;
};

struct ExperimentReport {
  RecoveryRegime regime;
  RadiusSpec radius;
  long n = 0;
  long m = 0;
  long k = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  double spike = 0.0;
  /// Keys: nu_gen, w_norm_genie, xi_over_sqrt_n, w_norm_socp, neg_fobj_over_sqrt_n.
  std::map<std::string, SampleStat> empirical;
  TheoryPoint theory;
  FailureLog failures;
  std::vector<TrialRecord> per_trial;
};

/// Runs the requested engines on `trials` instances. Failed trials are
/// counted and excluded. Throws AggregateError when trials < 1 or when more
/// than 10% of the trials of either engine fail.
ExperimentReport run_trials(const ExperimentConfig& config);

}  // namespace socprec
