#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msw::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kVerifyFailed = 3,
};

/// Runs the `msw` command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msw::cli
