#pragma once

#include <string>
#include <vector>

namespace resparse {

// One CLI invocation; args excludes the program name. Returns the process
// exit code: 0 success, 1 algorithmic failure (a failed --verify check, an
// iterative solve that gave up), 2 usage, parse, or input errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace resparse
