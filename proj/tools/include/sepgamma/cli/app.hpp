#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepgamma::cli {

/// Process exit codes. Verdicts live in output files, never in exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // selftest or certificate verification disagreed
  kExitInputError = 2,
  kExitNumericError = 3,
};

/// Entry point for `sepgamma <gen|bounds|certify|sweep|selftest> [flags]`.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepgamma::cli
