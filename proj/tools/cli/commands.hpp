#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charmat::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitResidualFailure = 1,
  kExitParseError = 2,
  kExitInvariantViolation = 3,
  kExitNumericalFailure = 4,
};

// Parses the command line, runs one command, prints its report to `out` and
// diagnostics to `err`. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace charmat::cli
