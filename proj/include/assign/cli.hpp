#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace assign {

/// Entry point of the `assign` tool. argv[0] is the program name.
/// Returns 0 on success, 2 on usage errors and 1 on computation errors;
/// diagnostics go to err as a single line.
int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err);

}  // namespace assign
