#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rrwoc/error.hpp"

namespace rrwoc::cli {

/// Runs one command line (without the program name). Machine output goes to
/// `out`, diagnostics and progress to `err`. Returns the process exit code:
/// 0 success, 1 usage or input error, 2 solver-declared failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorCode code) noexcept;

}  // namespace rrwoc::cli
