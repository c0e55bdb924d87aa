#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entsep::cli {

enum ExitCode : int { ok = 0, unexpected = 1, invalid_input = 2, resource_limit = 3 };

/// Runs one command line (without the program name). The report goes to
/// `out` in a single write; diagnostics and usage go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entsep::cli
