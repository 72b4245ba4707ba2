#pragma once

#include <string>
#include <vector>

namespace persist::verify {

struct CheckResult {
  std::string name;
  std::string summary;
  bool passed = false;
  std::string detail;  // counterexample parameters when a check fails
};

// Runs every cross-validation the toolkit ships: the binomial identities,
// closed-form-vs-enumeration equalities for both stream models, the
// position-probability recurrence, policy trace invariants, the density
// round-trip and the ratio spectrum. Deterministic (fixed seeds).
std::vector<CheckResult> run_all_checks();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace persist::verify
