#pragma once

// Command-line front end: sample, check, lsi, classify, gradcheck.

#include <iosfwd>

namespace tula::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Runs one command. Reports go to `out`, usage and error text to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tula::cli
