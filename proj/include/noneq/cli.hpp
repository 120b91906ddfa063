#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace noneq::cli {

/// Exit codes of the noneq command.
enum ExitCode : int {
  kSuccess = 0,      // success, true, pattern verified
  kFalse = 1,        // false, pattern mismatch, decomposition found under --expect-none
  kUsageError = 2,   // bad flags or unparsable input
  kUndecided = 3,    // some witness cell stayed undecided
};

/// Runs the command line given without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noneq::cli
