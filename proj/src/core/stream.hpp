#pragma once

#include "core/rational.hpp"

#include <cstdint>
#include <optional>

namespace persist {

// The two buffer slots. Items enter at L0 and shift to L1 one step later.
enum class Slot : int { L0 = 0, L1 = 1 };

// How many steps a run covers: the first n steps, or the extra step n+1 in
// which only L1 still holds an item. Permutation-model accounting is
// per-item and uses NPlusOne; iid-model accounting is per-step and uses N.
enum class Horizon : int { NSteps = 0, NPlusOne = 1 };

// An ordered sequence of nonnegative item values v_1..v_n.
class Stream {
 public:
  explicit Stream(std::vector<Rational> values);

  const std::vector<Rational>& values() const { return values_; }
  const Rational& value(std::size_t index) const { return values_[index]; }  // 0-based
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<Rational> values_;
};

// Slot contents at one time step. Empty slots are explicit: they are never
// conflated with a zero-valued item.
struct BufferView {
  std::optional<Rational> slot0;  // v_t while t <= n
  std::optional<Rational> slot1;  // v_{t-1} from t = 2 on
  std::uint64_t time = 0;
};

// Valid for 1 <= t <= n+1; throws std::out_of_range otherwise.
BufferView buffer_at(const Stream& stream, std::uint64_t t);

std::uint64_t step_count(const Stream& stream, Horizon horizon);

}  // namespace persist
