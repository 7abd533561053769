#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace indsem {

// Runs one command-line invocation; `args` excludes the program name.
// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace indsem
