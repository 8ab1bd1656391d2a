#pragma once

#include <iosfwd>

namespace socprec {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitRegimeError = 2,
  kExitCellFailed = 3,
  kExitUsage = 64,
};

/// Entry point shared by the executable and the tests. Reports go to `out`,
/// logs and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace socprec
