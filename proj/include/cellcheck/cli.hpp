#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellcheck {

/// Runs one command line (without the program name). Reports go to `out`,
/// warnings and errors to `err`. Returns 0 on success, 1 when `test` finds a
/// failed or not-applicable scenario, 2 on usage, input or output errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellcheck
