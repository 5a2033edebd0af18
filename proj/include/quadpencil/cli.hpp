#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadpencil::cli {

// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kNegativeResult = 1;  // infeasible, verification failure
inline constexpr int kUsageError = 2;
inline constexpr int kNumericalFailure = 3;

/// Runs one command; `args` excludes the program name. Data goes to `out`,
/// diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadpencil::cli
