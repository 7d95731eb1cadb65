#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smectic::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotConverged = 3;

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (args excludes the program name). Tables go to
/// `out`, diagnostics and warnings to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats with 17 significant digits; infinities print as inf / -inf.
std::string format_double(double v);

}  // namespace smectic::cli
