#pragma once

#include "core/stream.hpp"

#include <cstdint>
#include <variant>

namespace persist::gen {

// Deterministic 64-bit generator. bounded() rejection-samples, so shuffles
// stay unbiased; every draw is pure integer arithmetic and therefore
// reproduces bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t bounded(std::uint64_t n);  // uniform over [0, n), n >= 1

 private:
  std::uint64_t state_;
};

// Trial i of a run seeded with `base` uses derive_seed(base, i). The map is
// a fixed counter mix, so parallel trials are independent of worker
// scheduling and reproducible anywhere.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct PermutationModel {
  std::vector<Rational> values;  // distinct labeled items
};

struct IidModel {
  std::vector<Rational> values;  // strictly increasing a_0 < ... < a_{k-1}
  std::vector<Rational> probs;   // nonnegative, sums to exactly 1
  std::size_t length = 0;        // n
};

// Validates and assembles an iid model; throws std::invalid_argument when
// the probabilities do not sum to 1 or the support is not increasing.
IidModel make_iid_model(std::vector<Rational> values, std::vector<Rational> probs,
                        std::size_t length);

using StreamModel = std::variant<PermutationModel, IidModel>;

Stream sample_permutation(std::vector<Rational> values, std::uint64_t seed);
Stream sample_iid(const IidModel& model, std::uint64_t seed);
Stream sample_stream(const StreamModel& model, std::uint64_t seed);
std::uint64_t model_length(const StreamModel& model);

// lo,hi,lo,hi,... of the given length; requires lo < hi and n >= 2.
Stream alternating_adversary(const Rational& lo, const Rational& hi, std::size_t n);

// Density of a value multiset: the fraction c in (0, 1/2] at which the top
// floor(c*t) values hold a 1-c share of the total weight. residual = 0 marks
// an exact match; otherwise the nearest crossing is reported.
struct DensityReport {
  Rational c;
  std::uint64_t top_count = 0;  // floor(c * t)
  Rational lhs;                 // 1 - c
  Rational rhs;                 // weight share of the top_count largest values
  Rational residual;            // lhs - rhs
};

DensityReport measure_density(std::vector<Rational> values);

// Builds a t-element multiset that is exactly c-dense: floor(c*t) copies of
// a heavy value h over a light value 1, with h solved exactly in rationals.
std::vector<Rational> synth_c_dense(const Rational& c, std::size_t t);

}  // namespace persist::gen
