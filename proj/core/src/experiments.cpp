#include "socprec/experiments.hpp"

#include <cmath>
#include <sstream>

#include "socprec/error.hpp"
#include "socprec/genie.hpp"
#include "socprec/parallel.hpp"
#include "socprec/rng.hpp"

namespace socprec {

RadiusSpec parse_radius(const std::string& text) {
  if (text == "sqrt-m") return {RadiusMode::SqrtM, 1.0};
  if (text == "opt") return {RadiusMode::Opt, 1.0};
  const std::string prefix = "scaled:";
  if (text.rfind(prefix, 0) == 0) {
    double c = 0.0;
    try {
      std::size_t used = 0;
      const std::string tail = text.substr(prefix.size());
      c = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw DomainError("radius mode '" + text + "': cannot parse the scale");
    }
    if (!(c > 0.0 && c <= 1.0)) throw DomainError("radius scale must lie in (0, 1]");
    return {RadiusMode::Scaled, c};
  }
  throw DomainError("unknown radius mode '" + text + "' (expected sqrt-m, opt or scaled:<c>)");
}

std::string to_string(const RadiusSpec& spec) {
  switch (spec.mode) {
    case RadiusMode::SqrtM:
      return "sqrt-m";
    case RadiusMode::Opt:
      return "opt";
    case RadiusMode::Scaled: {
      std::ostringstream s;
      s << "scaled:" << spec.c;
      return s.str();
    }
  }
  return "?";
}

double scaled_radius(const RadiusSpec& spec, double alpha, double beta_w, double sigma,
                     bool is_signed) {
  switch (spec.mode) {
    case RadiusMode::SqrtM:
      return sigma * std::sqrt(alpha);
    case RadiusMode::Opt:
      return optimal_radius(alpha, beta_w, sigma, is_signed);
    case RadiusMode::Scaled:
      return sigma * std::sqrt(spec.c * alpha);
  }
  throw DomainError("invalid radius mode");
}

double resolve_radius(const RadiusSpec& spec, const ProblemDims& dims, double alpha,
                      double beta_w, double sigma, bool is_signed) {
  const double m = static_cast<double>(dims.m);
  switch (spec.mode) {
    case RadiusMode::SqrtM:
      return sigma * std::sqrt(m);
    case RadiusMode::Opt:
      return std::sqrt(static_cast<double>(dims.n)) *
             optimal_radius(alpha, beta_w, sigma, is_signed);
    case RadiusMode::Scaled:
      return sigma * std::sqrt(spec.c * m);
  }
  throw DomainError("invalid radius mode");
}

double default_spike(long n) { return 40.0 / std::sqrt(static_cast<double>(n)); }

ProblemInstance gen_instance(long n, double alpha, double beta_w, double sigma, double spike,
                             const RadiusSpec& radius, bool is_signed, std::uint64_t seed,
                             std::uint32_t trial) {
  if (!(sigma > 0.0)) throw DomainError("gen_instance: sigma must be positive");
  if (!(spike >= 0.0) || !std::isfinite(spike)) {
    throw DomainError("gen_instance: spike must be finite and nonnegative");
  }
  ProblemInstance inst;
  inst.dims = problem_dims(n, alpha, beta_w);
  inst.sigma = sigma;
  inst.seed = seed;
  inst.trial = trial;

  NormalStream a_stream(seed, trial, StreamTag::Matrix);
  NormalStream v_stream(seed, trial, StreamTag::Noise);
  inst.A = a_stream.normal_matrix(inst.dims.m, inst.dims.n);
  inst.v = sigma * v_stream.normal_vector(inst.dims.m);
  inst.x_tilde = Eigen::VectorXd::Zero(inst.dims.n);
  inst.x_tilde.tail(inst.dims.k).setConstant(spike);
  inst.y = inst.A * inst.x_tilde + inst.v;
  inst.r = resolve_radius(radius, inst.dims, alpha, beta_w, sigma, is_signed);
  return inst;
}

ExperimentReport run_trials(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw AggregateError("run_trials: no trials requested");
  if (!cfg.run_socp && !cfg.run_genie) throw DomainError("run_trials: no engine selected");

  ExperimentReport rep;
  const auto dims = problem_dims(cfg.n, cfg.alpha, cfg.beta_w);
  rep.regime = {cfg.alpha, cfg.beta_w, cfg.sigma,
                scaled_radius(cfg.radius, cfg.alpha, cfg.beta_w, cfg.sigma, cfg.is_signed),
                cfg.is_signed};
  rep.theory = predict_generic(rep.regime);
  rep.radius = cfg.radius;
  rep.n = dims.n;
  rep.m = dims.m;
  rep.k = dims.k;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.spike = cfg.spike > 0.0 ? cfg.spike : default_spike(cfg.n);

  const double r = resolve_radius(cfg.radius, dims, cfg.alpha, cfg.beta_w, cfg.sigma,
                                  cfg.is_signed);
  const double sqrt_n = std::sqrt(static_cast<double>(dims.n));

  struct Slot {
    bool genie_ok = false;
    bool socp_ok = false;
    double nu = 0.0, w_genie = 0.0, xi = 0.0, w_socp = 0.0, fobj = 0.0;
    std::string genie_reason, socp_reason;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.trials));

  parallel_for(slots.size(), resolve_thread_count(cfg.threads), [&](std::size_t t) {
    const auto trial = static_cast<std::uint32_t>(t);
    auto& s = slots[t];
    if (cfg.run_genie) {
      NormalStream gs(cfg.seed, trial, StreamTag::GenieG);
      NormalStream hs(cfg.seed, trial, StreamTag::GenieH);
      const Eigen::VectorXd g = gs.normal_vector(dims.m);
      const Eigen::VectorXd h = hs.normal_vector(dims.n);
      try {
        const auto sol = genie_solve(build_sorted(h, g, dims.k, cfg.is_signed), cfg.sigma, r);
        s.genie_ok = true;
        s.nu = sol.nu_gen;
        s.w_genie = sol.w_norm;
        s.xi = sol.xi_value / sqrt_n;
      } catch (const DegenerateInstanceError&) {
        s.genie_reason = "genie-degenerate";
      } catch (const AboveCharacterizationError&) {
        s.genie_reason = "genie-above-characterization";
      }
    }
    if (cfg.run_socp) {
      const auto inst = gen_instance(cfg.n, cfg.alpha, cfg.beta_w, cfg.sigma, rep.spike,
                                     cfg.radius, cfg.is_signed, cfg.seed, trial);
      try {
        const auto sol = solve_socp(inst.A, inst.y, inst.r, cfg.is_signed, cfg.socp, inst.x_tilde);
        if (sol.converged) {
          s.socp_ok = true;
          s.w_socp = sol.w.norm();
          s.fobj = -sol.f_obj / sqrt_n;
        } else {
          s.socp_reason = "socp-not-converged";
        }
      } catch (const InfeasibleError&) {
        s.socp_reason = "socp-infeasible";
      } catch (const NumericalError&) {
        s.socp_reason = "socp-numerical";
      }
    }
  });

  std::vector<double> nus, wg, xis, ws, fobjs;
  std::size_t genie_failures = 0;
  std::size_t socp_failures = 0;
  for (std::size_t t = 0; t < slots.size(); ++t) {
    const auto& s = slots[t];
    TrialRecord rec;
    rec.trial = static_cast<std::uint32_t>(t);
    if (cfg.run_genie) {
      if (s.genie_ok) {
        nus.push_back(s.nu);
        wg.push_back(s.w_genie);
        xis.push_back(s.xi);
        rec.values["nu_gen"] = s.nu;
        rec.values["w_norm_genie"] = s.w_genie;
        rec.values["xi_over_sqrt_n"] = s.xi;
      } else {
        ++genie_failures;
        rep.failures.add(s.genie_reason);
      }
    }
    if (cfg.run_socp) {
      if (s.socp_ok) {
        ws.push_back(s.w_socp);
        fobjs.push_back(s.fobj);
        rec.values["w_norm_socp"] = s.w_socp;
        rec.values["neg_fobj_over_sqrt_n"] = s.fobj;
      } else {
        ++socp_failures;
        rep.failures.add(s.socp_reason);
      }
    }
    if (cfg.keep_per_trial) rep.per_trial.push_back(std::move(rec));
  }

  const auto limit = static_cast<std::size_t>(cfg.trials);
  if (genie_failures * 10 > limit || socp_failures * 10 > limit) {
    throw AggregateError("run_trials: failure fraction above 10% (genie " +
                         std::to_string(genie_failures) + ", socp " +
                         std::to_string(socp_failures) + " of " + std::to_string(cfg.trials) +
                         ")");
  }
  if (cfg.run_genie) {
    rep.empirical["nu_gen"] = summarize(nus);
    rep.empirical["w_norm_genie"] = summarize(wg);
    rep.empirical["xi_over_sqrt_n"] = summarize(xis);
  }
  if (cfg.run_socp) {
    rep.empirical["w_norm_socp"] = summarize(ws);
    rep.empirical["neg_fobj_over_sqrt_n"] = summarize(fobjs);
  }
  return rep;
}

}  // namespace socprec
