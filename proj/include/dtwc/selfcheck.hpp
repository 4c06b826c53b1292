#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dtwc {

struct PropertyResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string first_failure;
};

struct SelfcheckReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool passed = false;
};

// Randomized invariant suite over every module at small sizes.
SelfcheckReport run_selfcheck(std::uint64_t seed, int trials = 20);

}  // namespace dtwc
