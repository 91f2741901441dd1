#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mbt {

/// Runs `mbt <args...>`. Exit codes: 0 success, 1 user error, 2 budget exceeded.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbt
