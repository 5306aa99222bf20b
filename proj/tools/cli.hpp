#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thspec::cli {

/// Exit codes: 0 success or pass, 1 verification or statistical failure
/// (also numerical breakdown), 2 configuration, parse or I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

/// Runs one command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thspec::cli
