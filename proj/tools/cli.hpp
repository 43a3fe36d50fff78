#ifndef UNPROJ_TOOLS_CLI_HPP
#define UNPROJ_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace unproj::cli {

/// Exit statuses of the command-line tool.
enum Status : int { kOk = 0, kUsage = 1, kMismatch = 2, kInconclusive = 3 };

/// Runs one command line (args excludes the program name); reports go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unproj::cli

#endif  // UNPROJ_TOOLS_CLI_HPP
