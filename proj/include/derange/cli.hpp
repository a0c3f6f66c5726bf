#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace derange {

/// Exit codes of the derange tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitCap = 2,
  kExitVerification = 3,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace derange
