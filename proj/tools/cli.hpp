#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pebthresh::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailed = 1,
  kUsageOrDomain = 2,
  kResourceCap = 3,
};

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pebthresh::cli
