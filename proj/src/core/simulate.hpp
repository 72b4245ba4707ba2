#pragma once

#include "core/stream.hpp"
#include "policies/policy.hpp"

#include <cassert>
#include <cstdint>
#include <functional>
#include <vector>

namespace persist {

struct TraceStep {
  std::uint64_t time = 0;
  Slot position = Slot::L0;
  std::optional<Rational> observed;  // empty when the slot past the boundary is observed
  Rational payoff;                   // observed value, or 0 at an empty slot
};

struct Trace {
  std::vector<TraceStep> steps;
  Rational total_payoff;
  std::vector<int> observation_count;  // per item; always 0, 1 or 2
};

namespace detail {

// The synchronous walk shared by every payoff accumulator: the observer
// starts at L0, items shift one slot per step, and the policy decides the
// next position from nothing but (position, value just observed).
//
// value_at(i) returns item i (0-based); visit(t, pos, has_item, item) fires
// once per step. While the run continues, the observed slot always holds an
// item, so decide() is never fed an empty slot.
template <class ValueAt, class Visit>
void walk(std::size_t n, ValueAt&& value_at, const Policy& policy, Horizon horizon, Visit&& visit) {
  const std::uint64_t last = (horizon == Horizon::NPlusOne) ? n + 1 : n;
  Slot pos = Slot::L0;
  for (std::uint64_t t = 1; t <= last; ++t) {
    const bool has_item = (pos == Slot::L0) ? (t <= n) : (t >= 2);
    const std::size_t item = static_cast<std::size_t>(pos == Slot::L0 ? t - 1 : t - 2);
    visit(t, pos, has_item, item);
    if (t < last) {
      assert(has_item);
      pos = decide(policy, pos, value_at(item));
    }
  }
}

}  // namespace detail

// Runs the policy against the stream and records every step. Pure: identical
// inputs give identical traces.
Trace simulate(const Stream& stream, const Policy& policy, Horizon horizon);

// Same walk, total payoff only.
Rational simulate_total(const Stream& stream, const Policy& policy, Horizon horizon);

// The offline optimum: v_1 plus max(v_t, v_{t-1}) at each step 2..n, plus a
// final v_n under the NPlusOne horizon.
Rational offline_payoff(const Stream& stream, Horizon horizon);

struct OfflinePlan {
  Rational value;
  std::vector<Slot> schedule;  // position per step, 1-based step order
};

// Independent validator of offline_payoff: a dynamic program over
// (step, position) states with unrestricted movement between the two slots.
OfflinePlan offline_dp(const Stream& stream, Horizon horizon);

}  // namespace persist
