#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cag {

// Runs one cag invocation. Exit status: 0 success, 1 domain error,
// 2 parse error, 3 resource cap exceeded. Diagnostics go to err as a
// single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cag
