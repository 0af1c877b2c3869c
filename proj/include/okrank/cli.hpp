#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace okrank {

/// Exit codes: 0 success or all identities equal, 1 verification mismatch,
/// 2 usage error or malformed input, 3 domain error.
enum ExitCode { exit_ok = 0, exit_mismatch = 1, exit_usage = 2, exit_domain = 3 };

/// Runs the command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace okrank
