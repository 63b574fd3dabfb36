#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace artin {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs the front end on argv-style arguments (without the program name).
/// Never throws; every failure maps to an exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace artin
