#pragma once

#include <string>
#include <vector>

namespace fracseries::cli {

/// Runs the command-line front end. `args` excludes the program name.
/// Returns the process exit code: 0 success, 2 configuration/parse error,
/// 3 tolerance breach in a check command.
int run(const std::vector<std::string>& args);

/// main() adapter; skips argv[0].
int run(int argc, const char* const* argv);

}  // namespace fracseries::cli
