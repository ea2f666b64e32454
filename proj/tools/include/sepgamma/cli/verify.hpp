#pragma once

#include <string>
#include <vector>

#include "sepgamma/cli/json_io.hpp"

namespace sepgamma::cli {

struct VerificationCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<VerificationCheck> checks;
};

/// Re-checks a certificate using only the file contents: the embedded state,
/// the config echo and the evidence. Throws InputError when the file cannot
/// be interpreted at all.
VerificationReport verify_certificate(const Json& cert);

}  // namespace sepgamma::cli
