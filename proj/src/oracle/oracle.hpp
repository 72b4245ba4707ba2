#pragma once

#include "core/simulate.hpp"
#include "gen/generators.hpp"

#include <optional>

namespace persist::oracle {

// The subject under measurement: a policy, or the offline optimum.
using Subject = std::optional<Policy>;

struct ExactExpectation {
  Rational value;
  std::uint64_t outcomes = 0;  // n! for permutations, k^n for iid
  Horizon horizon = Horizon::NSteps;
};

// Exact average of the subject's total payoff over all n! orderings of the
// given distinct values. Refuses n > 9 with a GuardError.
ExactExpectation enumerate_permutation_expectation(std::vector<Rational> values,
                                                   const Subject& subject, Horizon horizon);

// Probability-weighted exact sum over all k^n value sequences of the model.
// Refuses k^n > 10^6 with a GuardError.
ExactExpectation enumerate_iid_expectation(const gen::IidModel& model, const Subject& subject,
                                           Horizon horizon);

struct MonteCarloEstimate {
  Rational mean;  // exact mean of the per-trial payoffs
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t base_seed = 0;
  Horizon horizon = Horizon::NSteps;
};

// Seeded estimate of the expected payoff (total, or per-step when `relative`)
// over independent draws from the model. Trial i uses derive_seed(base, i),
// and per-trial results are aggregated in index order, so the estimate is
// bit-identical for any worker count.
MonteCarloEstimate monte_carlo(const gen::StreamModel& model, const Subject& subject,
                               std::uint64_t trials, std::uint64_t base_seed, Horizon horizon,
                               bool relative = false, unsigned workers = 1);

}  // namespace persist::oracle
