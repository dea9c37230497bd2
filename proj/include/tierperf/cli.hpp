#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tierperf::cli {

/// Exit codes: 0 success, 1 validation error, 2 capacity error, 64 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitUsage = 64;

/// Runs one CLI invocation; args excludes the program name. Writes results
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tierperf::cli
