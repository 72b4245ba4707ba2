#include "verify/verify.hpp"

#include "analytics/analytics.hpp"
#include "core/simulate.hpp"
#include "gen/generators.hpp"
#include "oracle/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace persist::verify {

namespace {

using analytics::IdentityPair;

std::vector<Rational> random_distinct_values(gen::SplitMix64& rng, std::size_t n) {
  std::vector<Rational> values;
  while (values.size() < n) {
    Rational v(static_cast<unsigned long>(rng.bounded(60) + 1),
               static_cast<unsigned long>(rng.bounded(6) + 1));
    v.canonicalize();
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  return values;
}

std::vector<Rational> random_probs(gen::SplitMix64& rng, std::size_t k) {
  std::vector<Rational> probs(k);
  Rational total = 0;
  for (auto& p : probs) {
    p = Rational(static_cast<unsigned long>(rng.bounded(9) + 1));
    total += p;
  }
  for (auto& p : probs) p /= total;
  return probs;
}

CheckResult check_identity_a() {
  CheckResult r{"binomial-identity-a", "sum of observation probabilities vs closed form, n <= 40",
                true, ""};
  for (std::uint64_t n = 1; n <= 40 && r.passed; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      const IdentityPair p = analytics::identity_sum_f_a(n, k);
      if (p.lhs != p.rhs) {
        r.passed = false;
        std::ostringstream d;
        d << "n=" << n << " k=" << k << " lhs=" << rational_str(p.lhs)
          << " rhs=" << rational_str(p.rhs);
        r.detail = d.str();
        break;
      }
    }
  }
  return r;
}

CheckResult check_identity_b() {
  CheckResult r{"binomial-identity-b",
                "sum of below-threshold observation probabilities vs closed form, n <= 40", true,
                ""};
  for (std::uint64_t n = 2; n <= 40 && r.passed; ++n) {
    for (std::uint64_t k = 1; k + 1 <= n; ++k) {
      const IdentityPair p = analytics::identity_sum_f_b(n, k);
      if (p.lhs != p.rhs) {
        r.passed = false;
        std::ostringstream d;
        d << "n=" << n << " k=" << k << " lhs=" << rational_str(p.lhs)
          << " rhs=" << rational_str(p.rhs);
        r.detail = d.str();
        break;
      }
    }
  }
  return r;
}

CheckResult check_coefficient_limit() {
  CheckResult r{"coefficient-limit",
                "normalized alternating sum approaches 1/(1+c) along n = 100, 1000, 10000", true,
                ""};
  const Rational bound(1, 100);
  for (int tenths = 1; tenths <= 5 && r.passed; ++tenths) {
    const Rational c(tenths, 10);
    const Rational limit = 1 / (1 + c);
    Rational prev_err = -1;
    for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
      const std::uint64_t k = (n * static_cast<std::uint64_t>(tenths)) / 10;
      const Rational err = abs(analytics::asymptotic_coefficient(n, k) - limit);
      if (prev_err >= 0 && !(err < prev_err)) {
        r.passed = false;
        std::ostringstream d;
        d << "error not decreasing at c=" << rational_str(c) << " n=" << n;
        r.detail = d.str();
        break;
      }
      if (n == 10000 && !(err < bound)) {
        r.passed = false;
        std::ostringstream d;
        d << "error " << to_double(err) << " >= 0.01 at c=" << rational_str(c);
        r.detail = d.str();
        break;
      }
      prev_err = err;
    }
  }
  return r;
}

CheckResult check_perm_opt_oracle() {
  CheckResult r{"perm-opt-oracle", "offline closed forms vs exhaustive permutation enumeration",
                true, ""};
  auto fail = [&](const std::string& d) {
    r.passed = false;
    r.detail = d;
  };

  const std::vector<Rational> fixed{1, 2, 3};
  if (analytics::perm_opt_relative(fixed) != Rational(8, 3)) {
    fail("interior-step mean of {1,2,3} is not 8/3");
    return r;
  }
  if (analytics::perm_opt_total(fixed, Horizon::NPlusOne) != Rational(28, 3)) {
    fail("full-horizon total of {1,2,3} is not 28/3");
    return r;
  }

  gen::SplitMix64 rng(20240601);
  for (std::size_t n = 2; n <= 6 && r.passed; ++n) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto values = random_distinct_values(rng, n);
      for (Horizon h : {Horizon::NSteps, Horizon::NPlusOne}) {
        const auto oracle = oracle::enumerate_permutation_expectation(values, std::nullopt, h);
        if (analytics::perm_opt_total(values, h) != oracle.value) {
          std::ostringstream d;
          d << "n=" << n << " horizon=" << (h == Horizon::NSteps ? "n" : "n+1")
            << " formula != enumeration";
          fail(d.str());
          break;
        }
      }
    }
  }
  return r;
}

CheckResult check_perm_threshold_oracle() {
  CheckResult r{"perm-threshold-oracle",
                "threshold-policy closed form vs exhaustive permutation enumeration", true, ""};
  const std::vector<Rational> fixed{1, 2, 3};
  const auto fixed_enum = oracle::enumerate_permutation_expectation(
      fixed, Policy(ThresholdPolicy{Rational(3)}), Horizon::NPlusOne);
  if (fixed_enum.value != 8 || analytics::perm_threshold_total(fixed, 1) != 8) {
    r.passed = false;
    r.detail = "expected mean payoff 8 for {1,2,3} with the largest value as threshold";
    return r;
  }

  gen::SplitMix64 rng(20240602);
  for (std::size_t n = 2; n <= 6 && r.passed; ++n) {
    for (int rep = 0; rep < 2 && r.passed; ++rep) {
      auto values = random_distinct_values(rng, n);
      for (std::uint64_t k = 1; k <= n; ++k) {
        const Policy policy = ThresholdPolicy{rank_threshold(values, k)};
        const auto oracle_mean =
            oracle::enumerate_permutation_expectation(values, policy, Horizon::NPlusOne);
        if (analytics::perm_threshold_total(values, k) != oracle_mean.value) {
          std::ostringstream d;
          d << "n=" << n << " k=" << k << " formula != enumeration";
          r.passed = false;
          r.detail = d.str();
          break;
        }
      }
    }
  }
  return r;
}

CheckResult check_iid_opt_oracle() {
  CheckResult r{"iid-opt-oracle", "per-step offline mean vs weighted iid enumeration", true, ""};
  const std::vector<Rational> bits{0, 1};
  const std::vector<Rational> uniform{Rational(1, 2), Rational(1, 2)};
  if (analytics::iid_opt_relative(bits, uniform) != Rational(3, 4)) {
    r.passed = false;
    r.detail = "pair-max mean of fair bits is not 3/4";
    return r;
  }

  gen::SplitMix64 rng(20240603);
  for (std::size_t k = 2; k <= 3 && r.passed; ++k) {
    const auto values = random_distinct_values(rng, k);
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto probs = random_probs(rng, k);
    for (std::size_t n = 2; n <= 6 && r.passed; ++n) {
      const auto model = gen::make_iid_model(sorted, probs, n);
      const auto oracle_mean = oracle::enumerate_iid_expectation(model, std::nullopt, Horizon::NSteps);
      Rational avg = 0;
      for (std::size_t i = 0; i < k; ++i) avg += sorted[i] * probs[i];
      const Rational expected =
          avg + Rational(static_cast<unsigned long>(n - 1)) * analytics::iid_opt_relative(sorted, probs);
      if (oracle_mean.value != expected) {
        std::ostringstream d;
        d << "k=" << k << " n=" << n << " enumeration != Avg + (n-1) * per-step mean";
        r.passed = false;
        r.detail = d.str();
      }
    }
  }
  return r;
}

CheckResult check_iid_threshold_oracle() {
  CheckResult r{"iid-threshold-oracle", "threshold-policy expected total vs weighted iid enumeration",
                true, ""};
  gen::SplitMix64 rng(20240604);
  for (std::size_t k = 2; k <= 3 && r.passed; ++k) {
    auto values = random_distinct_values(rng, k);
    std::sort(values.begin(), values.end());
    const auto probs = random_probs(rng, k);
    for (std::size_t n = 1; n <= 6 && r.passed; ++n) {
      const auto model = gen::make_iid_model(values, probs, n);
      for (std::size_t ridx = 0; ridx < k; ++ridx) {
        const Policy policy = ThresholdPolicy{values[ridx]};
        const auto oracle_mean = oracle::enumerate_iid_expectation(model, policy, Horizon::NSteps);
        if (analytics::iid_threshold_total(values, probs, ridx, n) != oracle_mean.value) {
          std::ostringstream d;
          d << "k=" << k << " n=" << n << " r=" << ridx << " formula != enumeration";
          r.passed = false;
          r.detail = d.str();
          break;
        }
      }
    }
  }
  return r;
}

CheckResult check_position_recurrence() {
  CheckResult r{"position-recurrence",
                "closed form of the at-entry probability vs recurrence iteration", true, ""};
  const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                   Rational(1)};
  for (const Rational& p : grid) {
    Rational q = 1;
    const Rational limit = 1 / (1 + p);
    for (std::uint64_t i = 0; i <= 100; ++i) {
      if (analytics::q_closed_form(i, p) != q) {
        std::ostringstream d;
        d << "closed form != recurrence at i=" << i << " P=" << rational_str(p);
        r.passed = false;
        r.detail = d.str();
        return r;
      }
      if (i >= 1 && !(abs(q - limit) <= pow_rational(p, i))) {
        std::ostringstream d;
        d << "convergence bound violated at i=" << i << " P=" << rational_str(p);
        r.passed = false;
        r.detail = d.str();
        return r;
      }
      q = 1 - p * q;
    }
    // the one-off variant disagrees at the start (documented) and is exactly
    // one index behind afterwards
    if (analytics::q_printed_form(0, p) == analytics::q_recurrence(0, p)) {
      r.passed = false;
      r.detail = "one-off variant unexpectedly matches at i=0 for P=" + rational_str(p);
      return r;
    }
    for (std::uint64_t i = 1; i <= 20; ++i) {
      if (analytics::q_printed_form(i, p) != analytics::q_recurrence(i - 1, p)) {
        r.passed = false;
        r.detail = "one-off variant is not the index-shifted recurrence at P=" + rational_str(p);
        return r;
      }
    }
  }
  return r;
}

CheckResult check_policy_invariants() {
  CheckResult r{"policy-invariants", "trace-level threshold and offline-bound invariants", true, ""};
  auto fail = [&](const std::string& d) {
    r.passed = false;
    r.detail = d;
  };

  gen::SplitMix64 rng(20240605);
  for (int rep = 0; rep < 30 && r.passed; ++rep) {
    const std::size_t n = 1 + rng.bounded(8);
    std::vector<Rational> values;
    values.reserve(n);
    Rational max_value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational v(static_cast<unsigned long>(rng.bounded(20)),
                 static_cast<unsigned long>(rng.bounded(4) + 1));
      v.canonicalize();
      max_value = std::max(max_value, v);
      values.push_back(std::move(v));
    }
    const Stream stream(values);
    const Horizon h = rep % 2 == 0 ? Horizon::NSteps : Horizon::NPlusOne;

    const Trace naive = simulate(stream, NaivePolicy{}, h);
    const Trace high = simulate(stream, ThresholdPolicy{max_value + 1}, h);
    if (naive.total_payoff != high.total_payoff ||
        naive.observation_count != high.observation_count) {
      fail("threshold above the maximum does not reproduce the stay-put trace");
      break;
    }
    const Rational opt = offline_payoff(stream, h);
    const auto plan = offline_dp(stream, h);
    if (plan.value != opt) {
      fail("offline dynamic program disagrees with the pairwise-max sum");
      break;
    }
    for (const Policy& p :
         {Policy(NaivePolicy{}), Policy(ThresholdPolicy{max_value}), Policy(ThresholdPolicy{0})}) {
      const Trace trace = simulate(stream, p, h);
      if (trace.total_payoff > opt) {
        fail("a policy trace exceeds the offline optimum");
        break;
      }
      for (int count : trace.observation_count) {
        if (count < 0 || count > 2) {
          fail("an observation count escaped {0, 1, 2}");
          break;
        }
      }
    }
  }

  if (r.passed) {
    // follow-everything pattern: odd positions twice, even positions missed
    const Stream stream(std::vector<Rational>{5, 7, 6, 9, 8, 4});
    const Trace trace = simulate(stream, ThresholdPolicy{4}, Horizon::NPlusOne);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const int expected = i % 2 == 0 ? 2 : 0;
      if (trace.observation_count[i] != expected) {
        fail("minimal threshold does not double-observe exactly the odd positions");
        break;
      }
    }
  }
  return r;
}

CheckResult check_density_roundtrip() {
  CheckResult r{"density-roundtrip", "synthesized dense sets measure back to the requested density",
                true, ""};
  const auto quarter = gen::measure_density(std::vector<Rational>{1, 1, 1, 9});
  if (quarter.c != Rational(1, 4) || quarter.residual != 0) {
    r.passed = false;
    r.detail = "set {1,1,1,9} did not measure as exactly 1/4-dense";
    return r;
  }
  for (int j = 1; j <= 10 && r.passed; ++j) {
    const Rational c(j, 20);
    for (std::size_t t : {40ULL, 1000ULL}) {
      const auto values = gen::synth_c_dense(c, t);
      const auto report = gen::measure_density(values);
      if (report.c != c || report.residual != 0) {
        std::ostringstream d;
        d << "c=" << rational_str(c) << " t=" << t << " round-trip failed";
        r.passed = false;
        r.detail = d.str();
        break;
      }
    }
  }
  return r;
}

CheckResult check_ratio_spectrum() {
  CheckResult r{"ratio-spectrum", "spectrum value at 1/2, monotonicity, and the bound collapse",
                true, ""};
  if (analytics::rho(Rational(1, 2)) != Rational(2, 3)) {
    r.passed = false;
    r.detail = "spectrum value at c=1/2 is not 2/3";
    return r;
  }
  Rational prev = 0;
  for (int j = 10; j >= 1; --j) {
    const Rational c(j, 20);
    const Rational value = analytics::rho(c);
    if (j < 10 && !(value > prev)) {
      r.passed = false;
      r.detail = "spectrum is not increasing towards small c";
      return r;
    }
    prev = value;
    // when the top share is exactly 1-c the ratio chain collapses to rho
    const Rational total = 840;
    const Rational top = total * (1 - c);
    if (analytics::competitive_bound_perm(total, top, c) != value) {
      r.passed = false;
      r.detail = "ratio chain does not collapse to the spectrum at share 1-c, c=" + rational_str(c);
      return r;
    }
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_all_checks() {
  std::vector<CheckResult> results;
  results.push_back(check_identity_a());
  results.push_back(check_identity_b());
  results.push_back(check_coefficient_limit());
  results.push_back(check_perm_opt_oracle());
  results.push_back(check_perm_threshold_oracle());
  results.push_back(check_iid_opt_oracle());
  results.push_back(check_iid_threshold_oracle());
  results.push_back(check_position_recurrence());
  results.push_back(check_policy_invariants());
  results.push_back(check_density_roundtrip());
  results.push_back(check_ratio_spectrum());
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace persist::verify
