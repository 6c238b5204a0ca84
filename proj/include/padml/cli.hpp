#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padml {

/// Runs one CLI invocation. `args` excludes the program name.
/// Exit codes: 0 success, 1 usage, 2 input/parse, 3 violated
/// mathematical precondition.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padml
