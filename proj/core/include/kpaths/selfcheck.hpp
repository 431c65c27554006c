#pragma once

#include <string>
#include <vector>

namespace kpaths {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Golden checks covering the value encoding digits, the expression algebra
/// on two worked operands, and the path database worked example. A healthy
/// build passes every check.
std::vector<CheckResult> run_selfchecks();

}  // namespace kpaths
