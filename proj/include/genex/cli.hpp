#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genex::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDivergence = 3 };

/// Entry point of the `genex` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genex::cli
