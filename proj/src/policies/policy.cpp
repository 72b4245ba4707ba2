#include "policies/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace persist {

Slot decide(const Policy& policy, Slot position, const Rational& observed) {
  return std::visit(
      [&](const auto& p) -> Slot {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, NaivePolicy>) {
          return Slot::L0;
        } else {
          if (position == Slot::L1) return Slot::L0;
          return observed >= p.threshold ? Slot::L1 : Slot::L0;
        }
      },
      policy);
}

Rational median_threshold(std::vector<Rational> values) {
  if (values.empty()) throw std::domain_error("median of an empty multiset");
  std::sort(values.begin(), values.end(), std::greater<>());
  // rank ceil(m/2) from the top, 0-based
  return values[(values.size() - 1) / 2];
}

Rational rank_threshold(std::vector<Rational> values, std::size_t k) {
  if (k < 1 || k > values.size()) throw std::domain_error("rank outside [1, m]");
  std::sort(values.begin(), values.end(), std::greater<>());
  return values[k - 1];
}

}  // namespace persist
