#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recam::cli {

/// Exit codes: 0 success, 1 usage/input errors, 2 job exceeds row
/// capacity, 3 simulator/reference score mismatch under --verify.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitVerifyMismatch = 3;

/// Runs the command line given argv-style arguments (excluding the
/// program name). All regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace recam::cli
