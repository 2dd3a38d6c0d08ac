#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNoValidSolution = 3,
};

/// Runs one command line (args[0] is the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adr::cli
