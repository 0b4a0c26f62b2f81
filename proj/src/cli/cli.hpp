#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipvec::cli {

enum ExitCode : int { kPass = 0, kFalsified = 1, kInputError = 2 };

/// Runs one command line (without the program name). The report goes to
/// --output when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace lipvec::cli
