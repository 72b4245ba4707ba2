#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "analytics/analytics.hpp"
#include "core/errors.hpp"
#include "oracle/oracle.hpp"

#include <cmath>

using namespace persist;
using namespace persist::oracle;

namespace {

gen::IidModel fair_bits(std::size_t n) {
  return gen::make_iid_model({Rational(0), Rational(1)}, {Rational(1, 2), Rational(1, 2)}, n);
}

}  // namespace

TEST_CASE("permutation enumeration matches hand-computed means") {
  const std::vector<Rational> values{Rational(1), Rational(2), Rational(3)};

  const auto threshold = enumerate_permutation_expectation(
      values, Policy(ThresholdPolicy{Rational(3)}), Horizon::NPlusOne);
  CHECK(threshold.value == 8);
  CHECK(threshold.outcomes == 6);

  const auto offline = enumerate_permutation_expectation(values, std::nullopt, Horizon::NPlusOne);
  CHECK(offline.value == Rational(28, 3));

  const auto naive = enumerate_permutation_expectation({Rational(4), Rational(9)},
                                                       Policy(NaivePolicy{}), Horizon::NSteps);
  CHECK(naive.value == 13);  // order never matters for the stay-put policy
}

TEST_CASE("permutation enumeration agrees with the engine on whole-stream runs") {
  // ties the index-permuted fast path to simulate()/offline_payoff()
  const std::vector<Rational> values{Rational(1, 2), Rational(3), Rational(7, 2), Rational(9)};
  for (Horizon h : {Horizon::NSteps, Horizon::NPlusOne}) {
    for (const Subject& subject :
         {Subject(std::nullopt), Subject(Policy(NaivePolicy{})),
          Subject(Policy(ThresholdPolicy{Rational(3)}))}) {
      Rational direct = 0;
      std::vector<Rational> order = values;
      std::sort(order.begin(), order.end());
      std::uint64_t count = 0;
      do {
        const Stream stream(order);
        direct += subject ? simulate_total(stream, *subject, h) : offline_payoff(stream, h);
        ++count;
      } while (std::next_permutation(order.begin(), order.end()));
      direct /= Rational(static_cast<unsigned long>(count));
      CHECK(enumerate_permutation_expectation(values, subject, h).value == direct);
    }
  }
}

TEST_CASE("permutation enumeration guards") {
  std::vector<Rational> big;
  for (int i = 0; i < 10; ++i) big.emplace_back(i);
  CHECK_THROWS_AS(enumerate_permutation_expectation(big, std::nullopt, Horizon::NSteps),
                  GuardError);
  CHECK_THROWS_AS(enumerate_permutation_expectation({Rational(1), Rational(1)}, std::nullopt,
                                                    Horizon::NSteps),
                  std::invalid_argument);
}

TEST_CASE("iid enumeration matches hand-computed means") {
  const auto offline = enumerate_iid_expectation(fair_bits(2), std::nullopt, Horizon::NSteps);
  CHECK(offline.value == Rational(5, 4));  // E[v1] + E[max] = 1/2 + 3/4
  CHECK(offline.outcomes == 4);

  const auto threshold = enumerate_iid_expectation(fair_bits(2),
                                                   Policy(ThresholdPolicy{Rational(1)}),
                                                   Horizon::NSteps);
  CHECK(threshold.value == Rational(5, 4));

  const auto degenerate = enumerate_iid_expectation(
      gen::make_iid_model({Rational(7)}, {Rational(1)}, 5), Policy(NaivePolicy{}), Horizon::NSteps);
  CHECK(degenerate.value == 35);
  CHECK(degenerate.outcomes == 1);
}

TEST_CASE("iid enumeration agrees with the engine on whole-stream runs") {
  const auto model = gen::make_iid_model({Rational(1), Rational(3)},
                                         {Rational(1, 3), Rational(2, 3)}, 4);
  const Policy policy = ThresholdPolicy{Rational(3)};
  Rational direct = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Rational> seq;
    Rational weight = 1;
    for (int j = 0; j < 4; ++j) {
      const int digit = (mask >> j) & 1;
      seq.push_back(model.values[digit]);
      weight *= model.probs[digit];
    }
    direct += weight * simulate_total(Stream(seq), policy, Horizon::NSteps);
  }
  CHECK(enumerate_iid_expectation(model, policy, Horizon::NSteps).value == direct);
}

TEST_CASE("iid enumeration guards") {
  CHECK_THROWS_AS(enumerate_iid_expectation(fair_bits(21), std::nullopt, Horizon::NSteps),
                  GuardError);
}

TEST_CASE("monte carlo on a degenerate model is exact") {
  const gen::StreamModel model = gen::make_iid_model({Rational(7)}, {Rational(1)}, 50);
  const auto estimate = monte_carlo(model, Policy(NaivePolicy{}), 10, 99, Horizon::NSteps);
  CHECK(estimate.mean == 350);
  CHECK(estimate.std_error == 0.0);
}

TEST_CASE("monte carlo converges to the enumerated expectation") {
  const gen::StreamModel model = fair_bits(6);
  const Policy policy = ThresholdPolicy{Rational(1)};
  const auto exact = enumerate_iid_expectation(fair_bits(6), policy, Horizon::NSteps);
  const auto estimate = monte_carlo(model, policy, 20000, 4242, Horizon::NSteps);
  const double gap = std::abs(to_double(estimate.mean) - to_double(exact.value));
  CHECK(gap <= 4 * estimate.std_error);
}

TEST_CASE("monte carlo is identical for any worker count") {
  const gen::StreamModel model = fair_bits(200);
  const Policy policy = ThresholdPolicy{Rational(1)};
  const auto one = monte_carlo(model, policy, 101, 31415, Horizon::NSteps, true, 1);
  const auto four = monte_carlo(model, policy, 101, 31415, Horizon::NSteps, true, 4);
  CHECK(one.mean == four.mean);
  CHECK(one.std_error == four.std_error);
}

TEST_CASE("standard error shrinks like the square root of the trial count") {
  const gen::StreamModel model = fair_bits(40);
  const auto small = monte_carlo(model, Policy(NaivePolicy{}), 2000, 7, Horizon::NSteps);
  const auto large = monte_carlo(model, Policy(NaivePolicy{}), 8000, 7, Horizon::NSteps);
  const double shrink = small.std_error / large.std_error;
  CHECK(shrink > 1.6);
  CHECK(shrink < 2.4);
}

TEST_CASE("monte carlo validates its trial count") {
  const gen::StreamModel model = fair_bits(4);
  CHECK_THROWS_AS(monte_carlo(model, std::nullopt, 1, 3, Horizon::NSteps), std::invalid_argument);
}

TEST_CASE("relative monte carlo divides by the horizon step count") {
  const gen::StreamModel model = gen::make_iid_model({Rational(2)}, {Rational(1)}, 10);
  const auto relative = monte_carlo(model, Policy(NaivePolicy{}), 5, 1, Horizon::NPlusOne, true);
  // 10 observations of value 2 over 11 steps
  CHECK(relative.mean == Rational(20, 11));
}
