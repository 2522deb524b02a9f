#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxhom::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

/// Runs the command line `args` (without the program name). All output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxhom::cli
