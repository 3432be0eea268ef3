#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace complab::cli {

/// Exit codes of the command line.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

/// Parses `args` (without the program name), runs the subcommand and writes
/// newline-delimited JSON reports to `out` (or to --out). Diagnostics and the
/// structured failure report go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace complab::cli
