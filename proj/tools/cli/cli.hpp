#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace koszul::cli {

enum ExitCode : int { ok = 0, check_failed = 1, input_error = 2, degenerate = 3 };

// Runs the koszul-rank command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszul::cli
