#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gybe {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs one command. `args` excludes the program name. Diagnostics go to
/// `err` as a single line; never throws.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gybe
