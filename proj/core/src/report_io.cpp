#include "socprec/report_io.hpp"

#include <sstream>

namespace socprec {
namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// Theory value that a given empirical statistic is compared against.
double theory_for(const std::string& stat, const TheoryPoint& t) {
  if (stat == "nu_gen") return t.nu_gen;
  if (stat == "xi_over_sqrt_n") return t.xi_prim_limit;
  if (stat == "neg_xi_over_sqrt_n" || stat == "neg_fobj_over_sqrt_n") return -t.xi_prim_limit;
  return t.w_norm;
}

Engine engine_for(const std::string& stat) {
  return stat == "w_norm_socp" || stat == "neg_fobj_over_sqrt_n" ? Engine::Socp : Engine::Genie;
}

void csv_row(std::ostringstream& out, double alpha, double beta_over_alpha,
             const std::string& r_mode, const TableCell& c) {
  out << num(alpha) << ',' << num(beta_over_alpha) << ',' << r_mode << ',' << c.stat << ','
      << num(c.empirical) << ',' << num(c.std_error) << ',' << num(c.theory) << ','
      << (c.pass ? "true" : "false") << '\n';
}

}  // namespace

ordered_json to_json(const RecoveryRegime& r) {
  return ordered_json{{"alpha", r.alpha},   {"beta_w", r.beta_w}, {"beta_over_alpha", r.beta_w / r.alpha},
                      {"sigma", r.sigma},   {"r_sc", r.r_sc},     {"signed", r.is_signed}};
}

ordered_json to_json(const TheoryPoint& t) {
  return ordered_json{{"regime", to_json(t.regime)},
                      {"theta_hat", t.theta_hat},
                      {"nu_gen", t.nu_gen},
                      {"w_norm", t.w_norm},
                      {"xi_prim_limit", t.xi_prim_limit},
                      {"alpha_w", t.alpha_w},
                      {"r_opt_sc", t.r_opt_sc},
                      {"theta_root_count", t.theta_root_count}};
}

ordered_json to_json(const ExperimentReport& rep) {
  ordered_json empirical = ordered_json::object();
  for (const auto& [name, s] : rep.empirical) {
    empirical[name] = {{"mean", s.mean}, {"stderr", s.std_error}, {"std", s.std_dev},
                       {"count", s.count}};
  }
  ordered_json reasons = ordered_json::object();
  for (const auto& [why, count] : rep.failures.reasons) reasons[why] = count;
  ordered_json out{{"regime", to_json(rep.regime)},
                   {"r_mode", to_string(rep.radius)},
                   {"n", rep.n},
                   {"m", rep.m},
                   {"k", rep.k},
                   {"trials", rep.trials},
                   {"seed", rep.seed},
                   {"spike", rep.spike},
                   {"empirical", empirical},
                   {"theory", to_json(rep.theory)},
                   {"failures", {{"count", rep.failures.count}, {"reasons", reasons}}}};
  if (!rep.per_trial.empty()) {
    ordered_json trials = ordered_json::array();
    for (const auto& t : rep.per_trial) {
      ordered_json rec{{"trial", t.trial}};
      for (const auto& [k, v] : t.values) rec[k] = v;
      trials.push_back(rec);
    }
    out["per_trial"] = trials;
  }
  return out;
}

ordered_json to_json(const TableResult& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : row.cells) {
      cells.push_back({{"stat", c.stat},
                       {"empirical", c.empirical},
                       {"stderr", c.std_error},
                       {"theory", c.theory},
                       {"tolerance", c.tolerance},
                       {"absolute", c.absolute},
                       {"pass", c.pass}});
    }
    ordered_json r{{"alpha", row.block.alpha},
                   {"beta_over_alpha", row.block.beta_over_alpha},
                   {"beta_w", row.beta_w},
                   {"r_mode", to_string(row.block.radius)},
                   {"engine", to_string(row.block.engine)},
                   {"n", row.report.n},
                   {"trials", row.report.trials},
                   {"outlier", row.block.outlier},
                   {"cells", cells},
                   {"pass", row.pass}};
    if (!row.error.empty()) {
      r["error"] = row.error;
    } else {
      r["report"] = to_json(row.report);
    }
    rows.push_back(r);
  }
  return ordered_json{{"table", table.id},
                      {"signed", table.is_signed},
                      {"rows", rows},
                      {"pass", table.all_pass()}};
}

std::string csv_header() { return "alpha,beta_over_alpha,r_mode,stat,empirical,stderr,theory,pass\n"; }

std::string to_csv_rows(const ExperimentReport& rep) {
  std::ostringstream out;
  for (const auto& [name, s] : rep.empirical) {
    const auto cell = make_cell(name, s, theory_for(name, rep.theory), engine_for(name), false);
    csv_row(out, rep.regime.alpha, rep.regime.beta_w / rep.regime.alpha, to_string(rep.radius),
            cell);
  }
  return out.str();
}

std::string to_csv_rows(const TableResult& table) {
  std::ostringstream out;
  for (const auto& row : table.rows) {
    if (!row.error.empty()) {
      TableCell failed;
      failed.stat = "error";
      csv_row(out, row.block.alpha, row.block.beta_over_alpha, to_string(row.block.radius),
              failed);
      continue;
    }
    for (const auto& c : row.cells) {
      csv_row(out, row.block.alpha, row.block.beta_over_alpha, to_string(row.block.radius), c);
    }
  }
  return out.str();
}

std::string contour_csv(const std::vector<ContourPoint>& points) {
  std::ostringstream out;
  out << "rho,beta_w,alpha,mode\n";
  for (const auto& p : points) {
    if (!p.reached) continue;
    out << num(p.rho) << ',' << num(p.beta_w) << ',' << num(p.alpha) << ',' << to_string(p.mode)
        << '\n';
  }
  return out.str();
}

}  // namespace socprec
