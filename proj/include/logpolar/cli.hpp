#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace logpolar::cli {

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kDomain = 3 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logpolar::cli
