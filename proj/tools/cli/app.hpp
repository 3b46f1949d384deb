#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anonlip::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  ///< verification did not pass
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;

/// Runs the command line `args` (without the program name). Failures are
/// written to `err` as a single line `error[kind]: message`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace anonlip::cli
