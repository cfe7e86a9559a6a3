#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uwell::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kAbsent = 2,   ///< no bound state, or no bracket in the scanned range
  kFailure = 3,  ///< solver failure or undetermined verdict
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uwell::cli
