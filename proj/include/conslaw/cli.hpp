#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conslaw::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs `conslaw-kit` with `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conslaw::cli
