#pragma once

#include <string>
#include <vector>

namespace shearlab::cli {

/// Entry point behind the `shearlab` binary. Returns the process exit
/// code: 0 success, 2 validation error, 3 numerical-resolution refusal.
/// Errors are reported as one JSON object on stderr.
int run(const std::vector<std::string>& args);

}  // namespace shearlab::cli
