#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace airtime::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // I/O and anything unexpected
  kUsage = 2,         // bad command line or unparsable input file
  kInvalidInput = 3,  // parsed, but semantically invalid (scenario, rate, empty trace)
};

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace airtime::cli
