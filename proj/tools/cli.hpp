#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace majorant_lab::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kValidationError = 2 };

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"gen", "--model", "bernoulli", "--n", "1000", "--delta", "0.5"}.
/// Results go to --out when given, otherwise to `out`; diagnostics go to
/// `err`. Output files are written only after all work has succeeded.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace majorant_lab::cli
