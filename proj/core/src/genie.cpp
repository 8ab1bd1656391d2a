#include "socprec/genie.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "socprec/dims.hpp"
#include "socprec/error.hpp"
#include "socprec/parallel.hpp"
#include "socprec/rng.hpp"

namespace socprec {
namespace {

struct Candidate {
  bool valid = false;
  double nu = 0.0;
  double a = 0.0;
  double b = 0.0;
  double resid_sq = 0.0;
};

Candidate evaluate_candidate(const SortedDualData& d, Eigen::Index c, double sigma, double r) {
  Candidate out;
  const double G = d.g_norm_sq;
  const double H = d.suffix_h2[c];
  const double S = d.suffix_hz[c];
  const double Z = static_cast<double>(d.n() - c);

  const double a = sigma * (G - H) / r;
  const double b = sigma * S / r;
  const double Q = a * a - G + H;
  const double P = a * b - S;
  const double constant = b * b + Z;
  double disc = P * P - constant * Q;
  if (disc < 0.0) {
    if (disc < -1e-12 * std::max(1.0, P * P)) return out;
    disc = 0.0;
  }
  double nu;
  if (std::fabs(Q) < 1e-12 * std::max(1.0, G)) {
    if (P >= 0.0) return out;
    nu = -constant / (2.0 * P);
  } else {
    const double denom = -P + std::sqrt(disc);
    if (!(denom > 0.0)) return out;
    nu = constant / denom;
  }
  if (!(nu > 0.0) || !(a * nu + b > 0.0)) return out;
  const double resid_sq = nu * nu * H - 2.0 * nu * S + Z;
  if (!(G * nu * nu - resid_sq > 0.0)) return out;

  const Eigen::Index free_count = d.n() - d.k;
  if (c > 0 && d.h_bar[c - 1] * nu > 1.0 + 1e-9) return out;
  if (c < free_count && d.h_bar[c] * nu <= 1.0 - 1e-9) return out;

  out.valid = true;
  out.nu = nu;
  out.a = a;
  out.b = b;
  out.resid_sq = resid_sq;
  return out;
}

}  // namespace

SortedDualData build_sorted(const Eigen::VectorXd& h, const Eigen::VectorXd& g,
                            Eigen::Index k, bool is_signed) {
  const Eigen::Index n = h.size();
  if (k < 0 || k >= n) {
    throw DomainError("build_sorted: need 0 <= k < n, got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n));
  }
  SortedDualData d;
  d.k = k;
  d.is_signed = is_signed;
  d.g_norm_sq = g.squaredNorm();

  const Eigen::Index free_count = n - k;
  std::vector<double> head(static_cast<std::size_t>(free_count));
  for (Eigen::Index i = 0; i < free_count; ++i) {
    head[static_cast<std::size_t>(i)] = is_signed ? h[i] : std::fabs(h[i]);
  }
  std::stable_sort(head.begin(), head.end());

  d.h_bar.resize(n);
  d.z2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.h_bar[i] = i < free_count ? head[static_cast<std::size_t>(i)] : h[i];
    d.z2[i] = i < free_count ? 1.0 : -1.0;
  }
  d.suffix_h2 = Eigen::VectorXd::Zero(n + 1);
  d.suffix_hz = Eigen::VectorXd::Zero(n + 1);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    d.suffix_h2[i] = d.suffix_h2[i + 1] + d.h_bar[i] * d.h_bar[i];
    d.suffix_hz[i] = d.suffix_hz[i + 1] + d.h_bar[i] * d.z2[i];
  }
  return d;
}

GenieSolution genie_solve(const SortedDualData& data, double sigma, double r) {
  if (!(sigma > 0.0) || !(r > 0.0)) {
    throw DomainError("genie_solve: sigma and r must be positive");
  }
  const Eigen::Index free_count = data.n() - data.k;
  Candidate best;
  Eigen::Index best_c = -1;
  for (Eigen::Index c = 0; c <= free_count; ++c) {
    const auto cand = evaluate_candidate(data, c, sigma, r);
    if (cand.valid) {
      best = cand;
      best_c = c;
    }
  }
  if (best_c < 0) {
    throw DegenerateInstanceError("genie_solve: no clipping count satisfies the sandwich condition");
  }

  GenieSolution sol;
  sol.c_gen = best_c;
  sol.nu_gen = best.nu;
  sol.a_gen = best.a;
  sol.b_gen = best.b;
  sol.lambda = Eigen::VectorXd::Zero(data.n());
  for (Eigen::Index i = 0; i < best_c; ++i) {
    double l = 1.0 - best.nu * data.h_bar[i];
    l = std::max(l, 0.0);
    if (!data.is_signed) l = std::min(l, 1.0);
    sol.lambda[i] = l;
  }
  const double radicand = data.g_norm_sq * best.nu * best.nu - best.resid_sq;
  if (!(radicand > 0.0)) {
    throw AboveCharacterizationError("genie_solve: nonpositive radicand at accepted c");
  }
  sol.w_norm = sigma * std::sqrt(best.resid_sq / radicand);
  sol.xi_value = sigma * std::sqrt(radicand) - best.nu * r;
  return sol;
}

double genie_objective(const SortedDualData& data, double nu, const Eigen::VectorXd& lambda,
                       double sigma, double r) {
  if (lambda.size() != data.n()) throw DomainError("genie_objective: lambda has wrong length");
  const double resid_sq = (nu * data.h_bar - data.z2 + lambda).squaredNorm();
  const double radicand = data.g_norm_sq * nu * nu - resid_sq;
  if (!(radicand > 0.0)) {
    throw NumericalError("genie_objective: nonpositive radicand " + std::to_string(radicand));
  }
  return sigma * std::sqrt(radicand) - nu * r;
}

GenieStats genie_montecarlo(const RecoveryRegime& regime, long n, long trials,
                            std::uint64_t seed, int threads) {
  validate_regime(regime);
  if (trials < 1) throw AggregateError("genie_montecarlo: no trials requested");
  const auto dims = problem_dims(n, regime.alpha, regime.beta_w);
  const double r = regime.r_sc * std::sqrt(static_cast<double>(n));

  struct Slot {
    bool ok = false;
    double nu = 0.0;
    double w = 0.0;
    double xi = 0.0;
    std::string reason;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(trials));
  parallel_for(slots.size(), resolve_thread_count(threads), [&](std::size_t t) {
    const auto trial = static_cast<std::uint32_t>(t);
    NormalStream gs(seed, trial, StreamTag::GenieG);
    NormalStream hs(seed, trial, StreamTag::GenieH);
    const Eigen::VectorXd g = gs.normal_vector(dims.m);
    const Eigen::VectorXd h = hs.normal_vector(dims.n);
    auto& slot = slots[t];
    try {
      const auto sol = genie_solve(build_sorted(h, g, dims.k, regime.is_signed), regime.sigma, r);
      slot = {true, sol.nu_gen, sol.w_norm, sol.xi_value / std::sqrt(static_cast<double>(n)), {}};
    } catch (const DegenerateInstanceError&) {
      slot.reason = "degenerate-instance";
    } catch (const AboveCharacterizationError&) {
      slot.reason = "above-characterization";
    }
  });

  GenieStats stats;
  stats.n = dims.n;
  stats.m = dims.m;
  stats.k = dims.k;
  stats.trials = trials;
  std::vector<double> nus, ws, xis;
  for (const auto& s : slots) {
    if (!s.ok) {
      stats.failures.add(s.reason);
      continue;
    }
    nus.push_back(s.nu);
    ws.push_back(s.w);
    xis.push_back(s.xi);
  }
  if (stats.failures.count * 10 > static_cast<std::size_t>(trials)) {
    throw AggregateError("genie_montecarlo: " + std::to_string(stats.failures.count) + " of " +
                         std::to_string(trials) + " trials failed");
  }
  stats.nu_gen = summarize(nus);
  stats.w_norm = summarize(ws);
  stats.xi_over_sqrt_n = summarize(xis);
  return stats;
}

}  // namespace socprec
