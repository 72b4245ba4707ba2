#include "oracle/oracle.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace persist::oracle {

namespace {

constexpr std::uint64_t kMaxPermutationItems = 9;
constexpr std::uint64_t kMaxIidOutcomes = 1000000;

// Scales a value list to integer payoffs over one common denominator, so the
// enumeration inner loops touch nothing but machine-word-driven mpz adds.
struct ScaledValues {
  Integer denominator;
  std::vector<Integer> numerators;

  explicit ScaledValues(const std::vector<Rational>& values) : denominator(1) {
    for (const Rational& v : values) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(),
                                             v.get_den().get_mpz_t());
    numerators.reserve(values.size());
    for (const Rational& v : values) {
      Integer scale;
      mpz_divexact(scale.get_mpz_t(), denominator.get_mpz_t(), v.get_den().get_mpz_t());
      numerators.push_back(v.get_num() * scale);
    }
  }
};

Rational fold_mean(const Integer& grand, const Integer& denominator, const Integer& outcomes) {
  Rational mean(grand, denominator * outcomes);
  mean.canonicalize();
  return mean;
}

}  // namespace

ExactExpectation enumerate_permutation_expectation(std::vector<Rational> values,
                                                   const Subject& subject, Horizon horizon) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("cannot enumerate an empty value set");
  if (n > kMaxPermutationItems) {
    std::ostringstream msg;
    msg << "permutation enumeration is limited to n <= " << kMaxPermutationItems << " (got n=" << n
        << ")";
    throw GuardError(msg.str());
  }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (values[i] == values[i + 1])
      throw std::invalid_argument("permutation enumeration needs distinct values");
  }

  const ScaledValues scaled(values);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  Integer grand = 0;
  Integer run;
  std::uint64_t outcomes = 0;
  do {
    run = 0;
    if (subject) {
      detail::walk(
          n, [&](std::size_t i) -> const Rational& { return values[order[i]]; }, *subject, horizon,
          [&](std::uint64_t, Slot, bool has_item, std::size_t item) {
            if (has_item) run += scaled.numerators[order[item]];
          });
    } else {
      // offline optimum; values are sorted, so position order decides the max
      run += scaled.numerators[order[0]];
      for (std::size_t t = 1; t < n; ++t) {
        run += scaled.numerators[std::max(order[t], order[t - 1])];
      }
      if (horizon == Horizon::NPlusOne) run += scaled.numerators[order[n - 1]];
    }
    grand += run;
    ++outcomes;
  } while (std::next_permutation(order.begin(), order.end()));

  return {fold_mean(grand, scaled.denominator, Integer(static_cast<unsigned long>(outcomes))),
          outcomes, horizon};
}

ExactExpectation enumerate_iid_expectation(const gen::IidModel& model, const Subject& subject,
                                           Horizon horizon) {
  const std::size_t k = model.values.size();
  const std::size_t n = model.length;

  std::uint64_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes > kMaxIidOutcomes / k) {
      std::ostringstream msg;
      msg << "iid enumeration is limited to k^n <= " << kMaxIidOutcomes << " (got " << k << "^" << n
          << ")";
      throw GuardError(msg.str());
    }
    outcomes *= k;
  }

  const ScaledValues values(model.values);

  // probability weights as integers over one common denominator
  Integer prob_den = 1;
  for (const Rational& p : model.probs)
    mpz_lcm(prob_den.get_mpz_t(), prob_den.get_mpz_t(), p.get_den().get_mpz_t());
  std::vector<Integer> weight(k);
  for (std::size_t j = 0; j < k; ++j) {
    Integer scale;
    mpz_divexact(scale.get_mpz_t(), prob_den.get_mpz_t(), model.probs[j].get_den().get_mpz_t());
    weight[j] = model.probs[j].get_num() * scale;
  }

  std::vector<std::size_t> digits(n, 0);
  // prefix[j] = product of the weights of digits[0..j)
  std::vector<Integer> prefix(n + 1);
  prefix[0] = 1;
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * weight[digits[j]];

  Integer grand = 0;
  Integer run;
  while (true) {
    run = 0;
    if (subject) {
      detail::walk(
          n, [&](std::size_t i) -> const Rational& { return model.values[digits[i]]; }, *subject,
          horizon, [&](std::uint64_t, Slot, bool has_item, std::size_t item) {
            if (has_item) run += values.numerators[digits[item]];
          });
    } else {
      // offline optimum; support is ascending, so digit order decides the max
      run += values.numerators[digits[0]];
      for (std::size_t t = 1; t < n; ++t) {
        run += values.numerators[std::max(digits[t], digits[t - 1])];
      }
      if (horizon == Horizon::NPlusOne) run += values.numerators[digits[n - 1]];
    }
    grand += prefix[n] * run;

    // odometer increment, recomputing the weight products past the carry
    std::size_t pos = n;
    while (pos > 0 && digits[pos - 1] == k - 1) {
      digits[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++digits[pos - 1];
    for (std::size_t j = pos - 1; j < n; ++j) prefix[j + 1] = prefix[j] * weight[digits[j]];
  }

  Integer total_weight;
  mpz_pow_ui(total_weight.get_mpz_t(), prob_den.get_mpz_t(), n);
  return {fold_mean(grand, values.denominator, total_weight), outcomes, horizon};
}

MonteCarloEstimate monte_carlo(const gen::StreamModel& model, const Subject& subject,
                               std::uint64_t trials, std::uint64_t base_seed, Horizon horizon,
                               bool relative, unsigned workers) {
  if (trials < 2) throw std::invalid_argument("monte carlo needs at least 2 trials");
  if (workers == 0) workers = 1;

  std::vector<Rational> payoff(trials);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const Stream stream = gen::sample_stream(model, gen::derive_seed(base_seed, i));
      Rational x = subject ? simulate_total(stream, *subject, horizon)
                           : offline_payoff(stream, horizon);
      if (relative) x /= Rational(static_cast<unsigned long>(step_count(stream, horizon)));
      payoff[i] = std::move(x);
    }
  };

  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  // exact aggregation in trial order: worker count cannot change the result
  Rational sum = 0, sum_sq = 0;
  for (const Rational& x : payoff) {
    sum += x;
    sum_sq += x * x;
  }
  const Rational count(static_cast<unsigned long>(trials));
  MonteCarloEstimate est;
  est.mean = sum / count;
  const Rational variance = (sum_sq - sum * sum / count) / (count - 1);
  est.std_error = std::sqrt(to_double(variance / count));
  est.trials = trials;
  est.base_seed = base_seed;
  est.horizon = horizon;
  return est;
}

}  // namespace persist::oracle
