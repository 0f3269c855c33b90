#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mclex::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kPositive = 0,  // holds / closed / witness found / success
  kNegative = 1,  // fails / not closed / no witness
  kUnknown = 2,   // resource limit, usage or input error
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mclex::cli
