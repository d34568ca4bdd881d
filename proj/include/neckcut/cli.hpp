#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neckcut::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Runs one command line (without the program name). Returns 0 when every check of the
/// command passed, 2 on a verification failure and 1 on a usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neckcut::cli
