#pragma once

#include "tsmatch/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsmatch {

struct SelfcheckOptions {
  std::uint64_t seed = 42;
  int trials = 100;         // scale knob for the fuzz suites
  bool break_bound = false; // fault injection: one lower bound scaled by 1.01
  int threads = 1;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // short counts summary, or the first failure
};

struct SelfcheckReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
  /// First failing suite, or nullptr when everything passed.
  const SuiteResult* first_failure() const;
};

/// Runs every module property suite on generated data. Does not throw on
/// suite failure (failures land in the report); option misuse still raises.
SelfcheckReport run_selfcheck(const SelfcheckOptions& options);

}  // namespace tsmatch
