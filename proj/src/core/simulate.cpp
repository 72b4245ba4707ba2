#include "core/simulate.hpp"

#include <array>

namespace persist {

Trace simulate(const Stream& stream, const Policy& policy, Horizon horizon) {
  Trace trace;
  trace.total_payoff = 0;
  trace.observation_count.assign(stream.size(), 0);
  trace.steps.reserve(step_count(stream, horizon));
  detail::walk(
      stream.size(), [&](std::size_t i) -> const Rational& { return stream.value(i); }, policy,
      horizon, [&](std::uint64_t t, Slot pos, bool has_item, std::size_t item) {
        TraceStep step;
        step.time = t;
        step.position = pos;
        if (has_item) {
          step.observed = stream.value(item);
          step.payoff = stream.value(item);
          trace.total_payoff += step.payoff;
          ++trace.observation_count[item];
        } else {
          step.payoff = 0;
        }
        trace.steps.push_back(std::move(step));
      });
  return trace;
}

Rational simulate_total(const Stream& stream, const Policy& policy, Horizon horizon) {
  Rational total = 0;
  detail::walk(
      stream.size(), [&](std::size_t i) -> const Rational& { return stream.value(i); }, policy,
      horizon, [&](std::uint64_t, Slot, bool has_item, std::size_t item) {
        if (has_item) total += stream.value(item);
      });
  return total;
}

Rational offline_payoff(const Stream& stream, Horizon horizon) {
  const std::size_t n = stream.size();
  Rational total = stream.value(0);
  for (std::size_t t = 2; t <= n; ++t) {
    total += std::max(stream.value(t - 1), stream.value(t - 2));
  }
  if (horizon == Horizon::NPlusOne) total += stream.value(n - 1);
  return total;
}

OfflinePlan offline_dp(const Stream& stream, Horizon horizon) {
  const std::uint64_t n = stream.size();
  const std::uint64_t last = step_count(stream, horizon);

  auto payoff_at = [&](std::uint64_t t, Slot s) -> Rational {
    if (s == Slot::L0) return t <= n ? stream.value(t - 1) : Rational(0);
    return t >= 2 ? stream.value(t - 2) : Rational(0);
  };

  // best[t-1][s] = value collectable from step t onward when at slot s
  std::vector<std::array<Rational, 2>> best(last);
  for (std::uint64_t t = last; t >= 1; --t) {
    for (int s = 0; s < 2; ++s) {
      Rational v = payoff_at(t, static_cast<Slot>(s));
      if (t < last) v += std::max(best[t][0], best[t][1]);
      best[t - 1][s] = std::move(v);
    }
  }

  OfflinePlan plan;
  plan.schedule.reserve(last);
  Slot pos = best[0][0] >= best[0][1] ? Slot::L0 : Slot::L1;
  plan.value = best[0][static_cast<int>(pos)];
  plan.schedule.push_back(pos);
  for (std::uint64_t t = 2; t <= last; ++t) {
    pos = best[t - 1][0] >= best[t - 1][1] ? Slot::L0 : Slot::L1;
    plan.schedule.push_back(pos);
  }
  return plan;
}

}  // namespace persist
