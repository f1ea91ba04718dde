#pragma once

// Command-line front end. Kept in the library so tests can drive it
// without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace phasetomo::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2 };

/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g with negative zero printed as 0.
std::string format_number(double x);

}  // namespace phasetomo::cli
