#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covhuseg::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kPartialFailure = 1,  ///< some files failed, the rest were written
  kUsageError = 2,      ///< bad flags or flag values
  kFatalError = 3,      ///< nothing could be done (missing input, no pairs, ...)
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covhuseg::cli
