#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmatch::cli {

// Runs the command line `args` (args[0] is the program name). Results go to
// `out`, diagnostics and progress to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmatch::cli
