#pragma once

#include "core/rational.hpp"
#include "core/stream.hpp"

#include <variant>

namespace persist {

// Never leaves L0; every item is observed exactly once.
struct NaivePolicy {};

// Follows a value through both slots when it is at least the threshold,
// and always returns to L0 afterwards. The decision state is just the
// threshold and the current position.
struct ThresholdPolicy {
  Rational threshold;
};

using Policy = std::variant<NaivePolicy, ThresholdPolicy>;

// Pure function of (policy, position, value observed in the step just
// completed). The unobserved slot is never consulted.
Slot decide(const Policy& policy, Slot position, const Rational& observed);

// Value of rank ceil(m/2) from the top, so roughly half the multiset sits
// at or above the returned threshold.
Rational median_threshold(std::vector<Rational> values);

// k-th largest value; with distinct values exactly k of them are >= it.
Rational rank_threshold(std::vector<Rational> values, std::size_t k);

}  // namespace persist
