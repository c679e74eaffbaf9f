#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qdt::cli {

// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // also a failed consistency check
inline constexpr int kUsage = 2;        // bad flags or malformed input
inline constexpr int kCapExceeded = 3;

// Runs one subcommand; `args` excludes the program name. The report goes to
// --out if given, otherwise to `out`. Nothing reaches --out on error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdt::cli
