#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace monodromy::cli {

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  int passed = 0;
  int failed = 0;
  std::string first_failure;
};

/// Property suite behind `selfcheck`: fixed examples plus `count` random
/// instances per randomized property.
std::vector<CheckResult> run_selfcheck(std::uint32_t seed, int count);

}  // namespace monodromy::cli
