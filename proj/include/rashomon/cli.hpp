#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rashomon {

/// Runs the command-line tool on args (without the program name).
/// Returns the process exit code; failures print one diagnostic line to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rashomon
