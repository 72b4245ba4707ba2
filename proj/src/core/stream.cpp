#include "core/stream.hpp"

#include <sstream>
#include <stdexcept>

namespace persist {

Stream::Stream(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("stream must hold at least one value");
  for (const Rational& v : values_) {
    if (v < 0) throw std::invalid_argument("stream values must be nonnegative");
  }
}

BufferView buffer_at(const Stream& stream, std::uint64_t t) {
  const std::uint64_t n = stream.size();
  if (t < 1 || t > n + 1) {
    std::ostringstream msg;
    msg << "step " << t << " outside [1, " << n + 1 << "]";
    throw std::out_of_range(msg.str());
  }
  BufferView view;
  view.time = t;
  if (t <= n) view.slot0 = stream.value(t - 1);
  if (t >= 2) view.slot1 = stream.value(t - 2);
  return view;
}

std::uint64_t step_count(const Stream& stream, Horizon horizon) {
  return horizon == Horizon::NPlusOne ? stream.size() + 1 : stream.size();
}

}  // namespace persist
