#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxmatch {

// Runs the command-line tool on the given arguments (without argv[0]).
// Exit codes: 0 success, 1 internal error, 2 input error.  '-' as a path
// reads from `in`; reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace maxmatch
