#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sepgamma/linalg.hpp"

namespace sepgamma::cli {

using RealignmentKernel = std::function<ComplexMatrix(const ComplexMatrix&, const BipartiteDims&)>;

struct SelfTestOptions {
  /// Test hook: run the realignment properties against a kernel with the
  /// second-factor indices swapped. Every run with this set must fail.
  bool corrupt_realignment = false;
};

struct PropertyResult {
  std::string name;
  bool passed;
  double millis;
  std::string detail;
};

std::vector<PropertyResult> run_selftest(const SelfTestOptions& options);

}  // namespace sepgamma::cli
