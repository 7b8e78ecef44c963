#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcoh::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    ok = 0,
    domain_failure = 1,  // invalid algebra, failed check, infeasible request
    usage_error = 2,
    internal_error = 3,  // a checked identity failed; a bug
};

/// Runs one command. args excludes the program name. Data goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcoh::cli
