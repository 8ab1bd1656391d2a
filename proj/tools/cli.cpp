#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "socprec/error.hpp"
#include "socprec/experiments.hpp"
#include "socprec/report_io.hpp"
#include "socprec/tables.hpp"
#include "socprec/theory.hpp"

namespace socprec {
namespace {

struct RegimeFlags {
  std::optional<double> alpha;
  std::optional<double> beta_over_alpha;
  std::optional<double> beta;
  double sigma = 1.0;
  std::string r_mode = "sqrt-m";
  bool is_signed = false;
};

struct OutputFlags {
  std::string format;
  std::string out_path;
  bool quiet = false;
};

struct RunFlags {
  long n = 0;
  long trials = 0;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  double spike = 0.0;
  std::string engines;
  int max_iterations = 50000;
  bool per_trial = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_regime_flags(CLI::App* cmd, RegimeFlags& f) {
  cmd->add_option("--alpha", f.alpha, "measurement ratio m/n")->required();
  auto* boa = cmd->add_option("--beta-over-alpha", f.beta_over_alpha, "sparsity ratio k/m");
  auto* b = cmd->add_option("--beta", f.beta, "sparsity ratio k/n");
  boa->excludes(b);
  cmd->add_option("--sigma", f.sigma, "noise standard deviation")->capture_default_str();
  cmd->add_option("--r-mode", f.r_mode, "radius: sqrt-m, opt or scaled:<c>")
      ->capture_default_str();
  cmd->add_flag("--signed", f.is_signed, "nonnegative signals");
}

void add_output_flags(CLI::App* cmd, OutputFlags& f, const std::string& default_format) {
  f.format = default_format;
  cmd->add_option("--format", f.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out_path, "write the report to this file instead of stdout");
  cmd->add_flag("--quiet", f.quiet, "suppress log messages");
}

void add_run_flags(CLI::App* cmd, RunFlags& f, long n, long trials) {
  f.n = n;
  f.trials = trials;
  cmd->add_option("--n", f.n, "problem dimension")->capture_default_str();
  cmd->add_option("--trials", f.trials, "Monte Carlo trials")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->required();
  cmd->add_option("--threads", f.threads, "worker threads (default: $SOCPREC_THREADS or all cores)");
}

double resolve_beta(const RegimeFlags& f) {
  if (f.beta_over_alpha) return *f.alpha * *f.beta_over_alpha;
  if (f.beta) return *f.beta;
  throw UsageError("one of --beta-over-alpha or --beta is required");
}

RadiusSpec radius_or_usage(const std::string& text) {
  try {
    return parse_radius(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& text, const OutputFlags& f, std::ostream& out) {
  if (f.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file '" + f.out_path + "'");
  file << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

bool report_cells_pass(const ExperimentReport& rep) {
  for (const auto& [stat, s] : rep.empirical) {
    double theory = rep.theory.w_norm;
    Engine engine = Engine::Genie;
    if (stat == "nu_gen") theory = rep.theory.nu_gen;
    if (stat == "xi_over_sqrt_n") theory = rep.theory.xi_prim_limit;
    if (stat == "neg_fobj_over_sqrt_n") theory = -rep.theory.xi_prim_limit;
    if (stat == "w_norm_socp" || stat == "neg_fobj_over_sqrt_n") engine = Engine::Socp;
    if (!make_cell(stat, s, theory, engine, false).pass) return false;
  }
  return true;
}

int cmd_predict(const RegimeFlags& rf, const OutputFlags& of, std::ostream& out) {
  const double beta = resolve_beta(rf);
  const auto radius = radius_or_usage(rf.r_mode);
  const RecoveryRegime regime{*rf.alpha, beta, rf.sigma,
                              scaled_radius(radius, *rf.alpha, beta, rf.sigma, rf.is_signed),
                              rf.is_signed};
  const auto tp = predict_generic(regime);
  if (of.format == "csv") {
    std::ostringstream s;
    s.precision(10);
    s << "alpha,beta_w,sigma,r_sc,signed,theta_hat,nu_gen,w_norm,xi_prim_limit,alpha_w,r_opt_sc\n"
      << regime.alpha << ',' << regime.beta_w << ',' << regime.sigma << ',' << regime.r_sc << ','
      << (regime.is_signed ? "true" : "false") << ',' << tp.theta_hat << ',' << tp.nu_gen << ','
      << tp.w_norm << ',' << tp.xi_prim_limit << ',' << tp.alpha_w << ',' << tp.r_opt_sc << '\n';
    emit(s.str(), of, out);
  } else {
    auto j = to_json(tp);
    j["r_mode"] = to_string(radius);
    emit(dump(j), of, out);
  }
  return kExitOk;
}

int cmd_contour(const std::vector<double>& rhos, int grid_points, const std::vector<double>& values,
                double beta_min, double beta_max, const std::string& mode, bool is_signed,
                const OutputFlags& of, std::ostream& out, std::ostream& err) {
  std::vector<double> grid = values;
  if (grid.empty()) {
    if (grid_points < 1) throw UsageError("--beta-grid must be at least 1");
    if (!(beta_min > 0.0 && beta_max < 1.0 && beta_min <= beta_max)) {
      throw UsageError("beta range must satisfy 0 < beta-min <= beta-max < 1");
    }
    for (int i = 0; i < grid_points; ++i) {
      grid.push_back(grid_points == 1 ? beta_min
                                      : beta_min + (beta_max - beta_min) * i / (grid_points - 1));
    }
  }
  if (grid.empty()) throw UsageError("empty beta grid");

  std::vector<ContourMode> modes;
  if (mode == "both") {
    modes = {ContourMode::OptimalRadius, ContourMode::SqrtAlphaRadius};
  } else {
    try {
      modes = {parse_contour_mode(mode)};
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }

  std::vector<ContourPoint> points;
  for (double rho : rhos) {
    for (auto m : modes) {
      for (auto& p : contour(rho, grid, m, is_signed)) {
        if (!p.reached && !of.quiet) {
          err << "contour: skipped rho=" << rho << " beta_w=" << p.beta_w << " (" << to_string(m)
              << "): " << p.note << "\n";
        }
        points.push_back(std::move(p));
      }
    }
  }
  if (of.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : points) {
      if (!p.reached) continue;
      arr.push_back({{"rho", p.rho}, {"beta_w", p.beta_w}, {"alpha", p.alpha}, {"mode", to_string(p.mode)}});
    }
    emit(dump({{"signed", is_signed}, {"points", arr}}), of, out);
  } else {
    emit(contour_csv(points), of, out);
  }
  return kExitOk;
}

int cmd_experiment(const RegimeFlags& rf, const RunFlags& run, const OutputFlags& of, bool genie_only,
                   std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.alpha = *rf.alpha;
  cfg.beta_w = resolve_beta(rf);
  cfg.sigma = rf.sigma;
  cfg.is_signed = rf.is_signed;
  cfg.radius = radius_or_usage(rf.r_mode);
  cfg.n = run.n;
  cfg.trials = run.trials;
  cfg.seed = *run.seed;
  cfg.threads = run.threads;
  cfg.spike = run.spike;
  cfg.keep_per_trial = run.per_trial;
  cfg.socp.max_iterations = run.max_iterations;
  if (genie_only) {
    cfg.run_genie = true;
    cfg.run_socp = false;
  } else {
    cfg.run_socp = run.engines == "socp" || run.engines == "both";
    cfg.run_genie = run.engines == "genie" || run.engines == "both";
  }
  if (!of.quiet) {
    err << (genie_only ? "genie" : "simulate") << ": alpha=" << cfg.alpha << " beta_w=" << cfg.beta_w
        << " n=" << cfg.n << " trials=" << cfg.trials << " r-mode=" << to_string(cfg.radius) << "\n";
  }
  const auto rep = run_trials(cfg);
  if (of.format == "csv") {
    emit(csv_header() + to_csv_rows(rep), of, out);
  } else {
    emit(dump(to_json(rep)), of, out);
  }
  if (!of.quiet && rep.failures.count > 0) {
    err << "excluded " << rep.failures.count << " failed trial(s)\n";
  }
  return report_cells_pass(rep) ? kExitOk : kExitCellFailed;
}

int cmd_table(int id, const RunFlags& run, long genie_n, long socp_n, const OutputFlags& of,
              std::ostream& out, std::ostream& err) {
  TableScale scale;
  scale.genie_n = genie_n > 0 ? genie_n : run.n;
  scale.socp_n = socp_n > 0 ? socp_n : run.n;
  scale.trials = run.trials;
  scale.seed = *run.seed;
  scale.threads = run.threads;
  scale.socp.max_iterations = run.max_iterations;
  scale.include_genie = run.engines == "genie" || run.engines == "both";
  scale.include_socp = run.engines == "socp" || run.engines == "both";
  table_definition(id);  // validates the id before any work
  if (!of.quiet) err << "table " << id << ": " << table_definition(id).title << "\n";
  const auto result = reproduce_table(id, scale);
  if (!of.quiet) {
    for (const auto& row : result.rows) {
      err << "  alpha=" << row.block.alpha << " beta/alpha=" << row.block.beta_over_alpha << " "
          << to_string(row.block.engine) << " " << to_string(row.block.radius) << ": "
          << (row.error.empty() ? (row.pass ? "pass" : "FAIL") : "error: " + row.error) << "\n";
    }
  }
  if (of.format == "csv") {
    emit(csv_header() + to_csv_rows(result), of, out);
  } else {
    emit(dump(to_json(result)), of, out);
  }
  for (const auto& row : result.rows) {
    if (!row.error.empty() && row.cells.empty()) return kExitRegimeError;
  }
  return result.all_pass() ? kExitOk : kExitCellFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predict and measure the error of l1 recovery with a noise ball constraint", "socprec"};
  app.require_subcommand(1);

  RegimeFlags predict_regime;
  OutputFlags predict_out;
  auto* predict = app.add_subcommand("predict", "asymptotic prediction for one regime");
  add_regime_flags(predict, predict_regime);
  add_output_flags(predict, predict_out, "json");

  std::vector<double> rhos;
  int beta_grid = 0;
  std::vector<double> beta_values;
  double beta_min = 0.01, beta_max = 0.6;
  std::string contour_mode = "optimal-radius";
  bool contour_signed = false;
  OutputFlags contour_out;
  auto* cont = app.add_subcommand("contour", "constant error-to-noise curves");
  cont->add_option("--rho", rhos, "error-to-noise ratios")->required()->delimiter(',');
  auto* grid_opt = cont->add_option("--beta-grid", beta_grid, "number of beta_w grid points");
  auto* values_opt =
      cont->add_option("--beta-values", beta_values, "explicit beta_w values")->delimiter(',');
  grid_opt->excludes(values_opt);
  cont->add_option("--beta-min", beta_min)->capture_default_str();
  cont->add_option("--beta-max", beta_max)->capture_default_str();
  cont->add_option("--mode", contour_mode, "optimal-radius, sqrt-alpha-radius or both")
      ->capture_default_str();
  cont->add_flag("--signed", contour_signed);
  add_output_flags(cont, contour_out, "csv");

  RegimeFlags genie_regime;
  RunFlags genie_run;
  OutputFlags genie_out;
  auto* genie = app.add_subcommand("genie", "Monte Carlo of the finite-n dual solution");
  add_regime_flags(genie, genie_regime);
  add_run_flags(genie, genie_run, 1000, 500);
  genie->add_flag("--per-trial", genie_run.per_trial, "include per-trial values");
  add_output_flags(genie, genie_out, "json");

  RegimeFlags sim_regime;
  RunFlags sim_run;
  OutputFlags sim_out;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo of the recovery program");
  add_regime_flags(sim, sim_regime);
  add_run_flags(sim, sim_run, 400, 200);
  sim_run.engines = "socp";
  sim->add_option("--engines", sim_run.engines, "socp, genie or both")
      ->check(CLI::IsMember({"socp", "genie", "both"}))
      ->capture_default_str();
  sim->add_option("--spike", sim_run.spike, "nonzero amplitude (default 40/sqrt(n))");
  sim->add_option("--max-iterations", sim_run.max_iterations)->capture_default_str();
  sim->add_flag("--per-trial", sim_run.per_trial, "include per-trial values");
  add_output_flags(sim, sim_out, "json");

  int table_id = 0;
  RunFlags table_run;
  long genie_n = 0, socp_n = 0;
  OutputFlags table_out;
  auto* table = app.add_subcommand("table", "reproduce one of the eight validation tables");
  table->add_option("--id", table_id, "table number 1-8")->required()->check(CLI::Range(1, 8));
  add_run_flags(table, table_run, 0, 0);
  table->add_option("--genie-n", genie_n, "dimension for genie rows");
  table->add_option("--socp-n", socp_n, "dimension for recovery rows");
  table_run.engines = "both";
  table->add_option("--engines", table_run.engines, "socp, genie or both")
      ->check(CLI::IsMember({"socp", "genie", "both"}))
      ->capture_default_str();
  table->add_option("--max-iterations", table_run.max_iterations)->capture_default_str();
  add_output_flags(table, table_out, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict) return cmd_predict(predict_regime, predict_out, out);
    if (*cont) {
      if (grid_opt->count() == 0 && values_opt->count() == 0) {
        throw UsageError("one of --beta-grid or --beta-values is required");
      }
      return cmd_contour(rhos, beta_grid, beta_values, beta_min, beta_max, contour_mode,
                         contour_signed, contour_out, out, err);
    }
    if (*genie) return cmd_experiment(genie_regime, genie_run, genie_out, true, out, err);
    if (*sim) return cmd_experiment(sim_regime, sim_run, sim_out, false, out, err);
    if (*table) return cmd_table(table_id, table_run, genie_n, socp_n, table_out, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRegimeError;
  }
  return kExitUsage;
}

}  // namespace socprec
