#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace profin::cli {

enum ExitCode : int {
  kOk = 0,
  kFalse = 1,
  kInputError = 2,
  kPrecondition = 3,
  kResourceCap = 4,
};

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace profin::cli
