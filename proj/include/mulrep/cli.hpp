#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mulrep {

// One CLI invocation; args exclude the program name.  Returns the process
// exit code: 0 solved or success, 1 definitively not representable, 2 unknown
// or out of budget, 3 bad input, 4 internal verification failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mulrep
