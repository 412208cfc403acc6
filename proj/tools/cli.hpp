#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmwm::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nmwm::cli
