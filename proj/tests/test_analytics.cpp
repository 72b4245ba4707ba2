#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "analytics/analytics.hpp"
#include "gen/generators.hpp"

using namespace persist;
using namespace persist::analytics;

TEST_CASE("observation probability basics") {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      CHECK(f_tnk(1, n, k) == 1);  // the first position is always observed
    }
    for (std::uint64_t t = 1; t <= n; ++t) {
      CHECK(f_tnk(t, n, 1) == 1);  // a single followed value is never skipped
    }
  }
  CHECK(f_tnk(2, 3, 2) == Rational(1, 2));
  CHECK_THROWS_AS(f_tnk(0, 3, 1), std::domain_error);
  CHECK_THROWS_AS(f_tnk(4, 3, 1), std::domain_error);
  CHECK_THROWS_AS(f_tnk(1, 3, 4), std::domain_error);
}

TEST_CASE("observation probabilities satisfy their recurrence") {
  // f(t, n, k) = 1 - ((k-1)/(n-1)) f(t-1, n-1, k-1), with f(1, ., .) = 1
  for (std::uint64_t n = 2; n <= 12; ++n) {
    for (std::uint64_t k = 2; k <= n; ++k) {
      for (std::uint64_t t = 2; t <= n; ++t) {
        const Rational expected =
            1 - Rational(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(n - 1)) *
                    f_tnk(t - 1, n - 1, k - 1);
        CHECK(f_tnk(t, n, k) == expected);
      }
    }
  }
}

TEST_CASE("summation identity (a)") {
  const IdentityPair small = identity_sum_f_a(3, 2);
  CHECK(small.lhs == 2);
  CHECK(small.rhs == 2);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const IdentityPair ones = identity_sum_f_a(n, 1);
    CHECK(ones.lhs == Rational(static_cast<unsigned long>(n)));
    CHECK(ones.rhs == ones.lhs);
    const IdentityPair diag = identity_sum_f_a(n, n);
    CHECK(diag.lhs == diag.rhs);
  }
}

TEST_CASE("summation identity (b)") {
  const IdentityPair small = identity_sum_f_b(3, 1);
  CHECK(small.lhs == 2);
  CHECK(small.rhs == 2);
  CHECK(identity_sum_f_b(2, 1).lhs == identity_sum_f_b(2, 1).rhs);
  for (std::uint64_t n = 2; n <= 12; ++n) {
    for (std::uint64_t k = 1; k + 1 <= n; ++k) {
      const IdentityPair pair = identity_sum_f_b(n, k);
      CHECK(pair.lhs == pair.rhs);
    }
  }
  CHECK_THROWS_AS(identity_sum_f_b(5, 5), std::domain_error);
}

TEST_CASE("a corrupted term breaks identity (a)") {
  // detection power: nudging any single summand must destroy the equality
  const IdentityPair pair = identity_sum_f_a(10, 5);
  REQUIRE(pair.lhs == pair.rhs);
  for (int s = 1; s <= 4; ++s) {
    const Rational bump = Rational(1) / Rational(binomial(9, 4));
    CHECK(pair.lhs + Rational(s) * bump != pair.rhs);
  }
}

TEST_CASE("normalized alternating sum and its limit") {
  for (std::uint64_t n : {5ULL, 50ULL, 500ULL}) {
    CHECK(asymptotic_coefficient(n, 1) == 1);
  }
  const Rational at_half = asymptotic_coefficient(1000, 500);
  CHECK(abs(at_half - Rational(2, 3)) < Rational(1, 100));

  for (int tenths = 1; tenths <= 5; ++tenths) {
    const Rational limit = 1 / (1 + Rational(tenths, 10));
    Rational prev_err = -1;
    for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
      const std::uint64_t k = n * static_cast<std::uint64_t>(tenths) / 10;
      const Rational err = abs(asymptotic_coefficient(n, k) - limit);
      if (prev_err >= 0) CHECK(err < prev_err);
      prev_err = err;
    }
  }
}

TEST_CASE("offline permutation means") {
  CHECK(perm_opt_relative({Rational(1), Rational(2), Rational(3)}) == Rational(8, 3));
  CHECK(perm_opt_relative({Rational(6), Rational(6)}) == 6);
  CHECK(perm_opt_relative({Rational(0), Rational(1)}) == 1);
  CHECK_THROWS_AS(perm_opt_relative({Rational(1)}), std::domain_error);

  CHECK(perm_opt_total({Rational(1), Rational(2), Rational(3)}, Horizon::NPlusOne) ==
        Rational(28, 3));
  CHECK(perm_opt_total({Rational(4), Rational(4)}, Horizon::NPlusOne) == 12);
  CHECK(perm_opt_total({Rational(1), Rational(2), Rational(3)}, Horizon::NSteps) ==
        2 * Rational(8, 3) + 2);
}

TEST_CASE("threshold permutation total") {
  CHECK(perm_threshold_total({Rational(1), Rational(2), Rational(3)}, 1) == 8);

  // with the threshold at the minimum, nothing sits below it
  const std::vector<Rational> values{Rational(2), Rational(5), Rational(11)};
  const Rational everything = perm_threshold_total(values, 3);
  const Rational top_coef = asymptotic_coefficient(3, 3);
  CHECK(everything == 2 * top_coef * (2 + 5 + 11));

  CHECK_THROWS_AS(perm_threshold_total({Rational(1), Rational(1), Rational(2)}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(perm_threshold_total({Rational(1), Rational(2)}, 0), std::domain_error);
  CHECK_THROWS_AS(perm_threshold_total({Rational(1), Rational(2)}, 3), std::domain_error);
}

TEST_CASE("asymptotic per-step payoff") {
  // all mass in the followed values doubles the per-step payoff
  const Rational a(77);
  CHECK(perm_threshold_relative_asymptotic(a, a, 10, Rational(1, 2)) ==
        2 * a / (Rational(3, 2) * 10));
  // vanishing top weight leaves the single-observation rate
  CHECK(perm_threshold_relative_asymptotic(a, Rational(0), 10, Rational(1, 2)) ==
        a / (Rational(3, 2) * 10));
}

TEST_CASE("iid offline per-step mean") {
  CHECK(iid_opt_relative({Rational(0), Rational(1)}, {Rational(1, 2), Rational(1, 2)}) ==
        Rational(3, 4));
  CHECK(iid_opt_relative({Rational(9)}, {Rational(1)}) == 9);
}

TEST_CASE("iid threshold per-step mean") {
  const std::vector<Rational> bits{Rational(0), Rational(1)};
  const std::vector<Rational> fair{Rational(1, 2), Rational(1, 2)};
  CHECK(iid_threshold_relative(bits, fair, 1) == Rational(2, 3));
  // following everything doubles both sides of the ratio
  const std::vector<Rational> values{Rational(1), Rational(4), Rational(6)};
  const std::vector<Rational> probs{Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  Rational avg = 0;
  for (std::size_t i = 0; i < values.size(); ++i) avg += values[i] * probs[i];
  CHECK(iid_threshold_relative(values, probs, 0) == avg);
}

TEST_CASE("iid threshold totals at small n have closed shapes") {
  const std::vector<Rational> values{Rational(1), Rational(4), Rational(6)};
  const std::vector<Rational> probs{Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  for (std::size_t r = 0; r < values.size(); ++r) {
    Rational avg = 0, avg_plus = 0, big_p = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      avg += values[i] * probs[i];
      if (i >= r) {
        avg_plus += values[i] * probs[i];
        big_p += probs[i];
      }
    }
    CHECK(iid_threshold_total(values, probs, r, 1) == avg);
    CHECK(iid_threshold_total(values, probs, r, 2) == (2 - big_p) * avg + avg_plus);
  }
}

TEST_CASE("entry-slot probability forms") {
  const Rational half(1, 2);
  CHECK(q_recurrence(0, half) == 1);
  CHECK(q_recurrence(1, half) == half);
  CHECK(q_recurrence(2, half) == Rational(3, 4));
  for (std::uint64_t i = 0; i <= 60; ++i) {
    CHECK(q_closed_form(i, half) == q_recurrence(i, half));
  }
  // fixed point of q = 1 - Pq
  const Rational limit = 1 / (1 + half);
  CHECK(abs(q_closed_form(40, half) - limit) < Rational(1, 1000000000));

  // the one-off variant starts wrong and then lags by exactly one index
  CHECK(q_printed_form(0, half) == 0);
  CHECK(q_printed_form(1, half) == 1);
  for (std::uint64_t i = 1; i <= 20; ++i) {
    CHECK(q_printed_form(i, half) == q_recurrence(i - 1, half));
  }
}

TEST_CASE("ratio spectrum") {
  CHECK(rho(Rational(1, 2)) == Rational(2, 3));
  CHECK(rho(Rational(1, 4)) == Rational(56, 75));
  CHECK(rho(Rational(1, 1000000)) > Rational(999, 1000));
  CHECK_THROWS_AS(rho(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(rho(Rational(3, 4)), std::domain_error);

  Rational prev = 0;
  for (int j = 10; j >= 1; --j) {
    const Rational value = rho(Rational(j, 20));
    if (j < 10) CHECK(value > prev);
    prev = value;
  }
}

TEST_CASE("ratio chain bound") {
  // top share exactly 1-c collapses the chain to the spectrum value
  for (int j = 1; j <= 10; ++j) {
    const Rational c(j, 20);
    const Rational total(997);
    CHECK(competitive_bound_perm(total, total * (1 - c), c) == rho(c));
  }
  CHECK(competitive_bound_perm(Rational(10), Rational(10), Rational(1, 2)) == Rational(2, 3));
  CHECK_THROWS_AS(competitive_bound_perm(Rational(0), Rational(0), Rational(1, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(competitive_bound_perm(Rational(5), Rational(6), Rational(1, 2)),
                  std::domain_error);
}

TEST_CASE("forecast records") {
  const PermutationForecast perm =
      permutation_forecast({Rational(1), Rational(2), Rational(3)}, 1);
  CHECK(perm.alg_total_exact == 8);
  CHECK(perm.opt_total == Rational(28, 3));
  CHECK(perm.total_weight == perm.below_weight + perm.top_weight);

  const Record record = to_record(perm);
  bool saw_alg = false;
  for (const auto& [key, value] : record) {
    if (key == "alg_total_exact") {
      saw_alg = true;
      CHECK(value == "8/1");
    }
  }
  CHECK(saw_alg);

  const IidForecast iid = iid_forecast({Rational(0), Rational(1)},
                                       {Rational(1, 2), Rational(1, 2)}, 1, 5);
  CHECK(iid.alg_relative_asymptotic == Rational(2, 3));
  CHECK(iid.opt_relative == Rational(3, 4));
  CHECK(to_record(iid).size() == 13);
}
