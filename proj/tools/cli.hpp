#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace statefiber::cli {

/// Exit codes beyond the three verdicts.
constexpr int kUsageError = 3;     // bad arguments, unreadable or invalid input
constexpr int kInternalError = 4;  // certificate mismatch or family disagreement

/// Runs the command line `args` (without the program name). Returns the
/// process exit code; 0, 1 and 2 report FIBER, NOT_FIBER and NON_ORIENTABLE.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace statefiber::cli
