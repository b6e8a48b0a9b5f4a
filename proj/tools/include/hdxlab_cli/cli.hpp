#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hdxlab_cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kNumerical = 3,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable table for a report produced by any command.
void render_table(const nlohmann::ordered_json& report, std::ostream& out);

}  // namespace hdxlab_cli
