#pragma once

#include <string>
#include <vector>

namespace trackfuse {

/// Runs the trackfuse command line. Returns the process exit code:
/// 0 success, 1 usage or config error, 2 input data error, 3 internal
/// invariant violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace trackfuse
