#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/simulate.hpp"
#include "gen/generators.hpp"
#include "policies/policy.hpp"

using namespace persist;

TEST_CASE("threshold decisions") {
  const Policy p = ThresholdPolicy{Rational(3)};
  CHECK(decide(p, Slot::L0, Rational(5)) == Slot::L1);
  CHECK(decide(p, Slot::L0, Rational(3)) == Slot::L1);  // ties follow
  CHECK(decide(p, Slot::L0, Rational(2)) == Slot::L0);
  CHECK(decide(p, Slot::L1, Rational(9)) == Slot::L0);  // always returns
  CHECK(decide(p, Slot::L1, Rational(0)) == Slot::L0);
}

TEST_CASE("stay-put decisions") {
  const Policy p = NaivePolicy{};
  CHECK(decide(p, Slot::L0, Rational(100)) == Slot::L0);
  CHECK(decide(p, Slot::L1, Rational(1)) == Slot::L0);
}

TEST_CASE("decide is pure") {
  const Policy p = ThresholdPolicy{Rational(5, 2)};
  for (int i = 0; i < 5; ++i) {
    CHECK(decide(p, Slot::L0, Rational(5, 2)) == Slot::L1);
    CHECK(decide(p, Slot::L0, Rational(2)) == Slot::L0);
  }
}

TEST_CASE("median threshold") {
  CHECK(median_threshold({Rational(1), Rational(2), Rational(3), Rational(4)}) == 3);
  CHECK(median_threshold({Rational(9)}) == 9);
  CHECK(median_threshold({Rational(5), Rational(5), Rational(5), Rational(5)}) == 5);
  CHECK(median_threshold({Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)}) == 3);
  CHECK_THROWS_AS(median_threshold({}), std::domain_error);
}

TEST_CASE("rank threshold") {
  const std::vector<Rational> five{Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)};
  CHECK(rank_threshold(five, 2) == 4);
  CHECK(rank_threshold(five, 5) == 1);
  CHECK(rank_threshold({Rational(1), Rational(1), Rational(9)}, 1) == 9);
  CHECK_THROWS_AS(rank_threshold(five, 0), std::domain_error);
  CHECK_THROWS_AS(rank_threshold(five, 6), std::domain_error);
}

TEST_CASE("median threshold keeps roughly half the multiset at or above it") {
  gen::SplitMix64 rng(3344);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + rng.bounded(12);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < m; ++i) {
      values.emplace_back(static_cast<unsigned long>(rng.bounded(30)),
                          static_cast<unsigned long>(rng.bounded(4) + 1));
      values.back().canonicalize();
    }
    const Rational t = median_threshold(values);
    std::size_t at_or_above = 0;
    for (const Rational& v : values) {
      if (v >= t) ++at_or_above;
    }
    // with duplicates the count can only overshoot, never undershoot
    CHECK(at_or_above >= (m + 1) / 2);
  }
}

TEST_CASE("a minimal threshold double-observes the odd positions") {
  // n even, full horizon: positions 1,3,5,... are each seen twice and the
  // even positions never enter an observed slot
  const Stream s(std::vector<Rational>{Rational(3), Rational(8), Rational(1), Rational(9),
                                       Rational(2), Rational(7)});
  const Trace t = simulate(s, ThresholdPolicy{Rational(1)}, Horizon::NPlusOne);
  CHECK(t.observation_count == std::vector<int>{2, 0, 2, 0, 2, 0});
  CHECK(t.total_payoff == 2 * (Rational(3) + Rational(1) + Rational(2)));
}
