#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcff {

// Entry point for the `gcff` command line. `args` excludes the program name.
// Returns the process exit code; 0 iff the command succeeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gcff
