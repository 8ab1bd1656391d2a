#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socprec/experiments.hpp"

namespace socprec {

enum class Engine { Genie, Socp };

std::string to_string(Engine engine);

/// One (regime, radius, engine) run of a validation table.
///
/// Rows at the optimal radius take beta_w from the rho contour at `alpha`
/// (the printed ratio is a rounded label); all other rows use the printed
/// ratio, except that 0.33 stands for 1/3.
struct TableBlock {
  double alpha = 0.0;
  double beta_over_alpha = 0.0;  // as printed
  double beta_ratio_used = 0.0;  // ratio used when not on a contour
  double rho = 0.0;              // > 0: beta_w comes from the contour
  RadiusSpec radius;
  Engine engine = Engine::Socp;
  long n = 0;
  long trials = 0;
  bool outlier = false;
};

struct TableDefinition {
  int id = 0;
  bool is_signed = false;
  std::string title;
  std::vector<TableBlock> blocks;
};

const TableDefinition& table_definition(int id);
double block_beta(const TableBlock& block, bool is_signed);
RecoveryRegime block_regime(const TableBlock& block, bool is_signed, double sigma = 1.0);

/// Relative tolerances for table cells, plus absolute ones used when the
/// theory value is smaller than the absolute tolerance itself.
constexpr double kGenieTolerance = 0.03;
constexpr double kSocpTolerance = 0.07;
constexpr double kOutlierTolerance = 0.20;
constexpr double kGenieZeroTolerance = 0.01;
constexpr double kSocpZeroTolerance = 0.02;

struct TableCell {
  std::string stat;
  double empirical = 0.0;
  double std_error = 0.0;
  double theory = 0.0;
  double tolerance = 0.0;
  bool absolute = false;
  bool pass = false;
};

TableCell make_cell(const std::string& stat, const SampleStat& empirical, double theory,
                    Engine engine, bool outlier);

struct TableRowResult {
  TableBlock block;
  double beta_w = 0.0;
  ExperimentReport report;
  std::vector<TableCell> cells;
  std::string error;
  bool pass = false;
};

struct TableResult {
  int id = 0;
  bool is_signed = false;
  std::vector<TableRowResult> rows;

  bool all_pass() const;
};

struct TableScale {
  long genie_n = 0;  // 0 keeps the size listed for the table
  long socp_n = 0;
  long trials = 0;
  bool include_genie = true;
  bool include_socp = true;
  std::uint64_t seed = 1;
  int threads = 0;
  SocpOptions socp;
};

/// Runs every block of table `id`. A block whose run throws is reported with
/// `error` set and pass = false; the remaining blocks still run.
TableResult reproduce_table(int id, const TableScale& scale);

}  // namespace socprec
