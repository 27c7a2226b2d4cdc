#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // bad flags, invalid parameters
  kIo = 2,            // unreadable / unwritable files, malformed input
  kVerifyFailed = 3,  // `verify` found a mismatch
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spa::cli
