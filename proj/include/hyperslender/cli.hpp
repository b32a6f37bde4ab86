#pragma once

#include <string>
#include <vector>

namespace hyperslender {

/// Runs one command-line invocation (arguments without the program name).
/// Exit codes: 0 success, 1 usage or input error, 2 admissibility failure,
/// 3 verification failure.
int run_cli(const std::vector<std::string>& args);

} // namespace hyperslender
