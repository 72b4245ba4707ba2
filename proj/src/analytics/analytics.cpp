#include "analytics/analytics.hpp"

#include <algorithm>
#include <stdexcept>

namespace persist::analytics {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// sum_{s=0}^{terms-1} (-1)^s C(n-1-s, k-1-s), the numerator family behind the
// observation probabilities. Terms are updated incrementally; every division
// is exact because each update lands on the next binomial.
Integer alt_sum_shifted(std::uint64_t n, std::uint64_t k, std::uint64_t terms) {
  Integer sum = 0;
  if (terms == 0) return sum;
  Integer term;
  mpz_bin_uiui(term.get_mpz_t(), n - 1, k - 1);
  for (std::uint64_t s = 0;; ++s) {
    if (s % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (s + 1 >= terms) break;
    term *= static_cast<unsigned long>(k - 1 - s);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n - 1 - s));
  }
  return sum;
}

// sum_{s=0}^{k-1} (-1)^s C(n-s, k-1-s)
Integer alt_sum_top(std::uint64_t n, std::uint64_t k) {
  Integer sum = 0;
  if (k == 0) return sum;
  Integer term;
  mpz_bin_uiui(term.get_mpz_t(), n, k - 1);
  for (std::uint64_t s = 0;; ++s) {
    if (s % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (s + 1 >= k) break;
    term *= static_cast<unsigned long>(k - 1 - s);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n - s));
  }
  return sum;
}

Rational make_ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void validate_iid(const std::vector<Rational>& values, const std::vector<Rational>& probs) {
  if (values.empty()) throw std::invalid_argument("iid support must be nonempty");
  if (values.size() != probs.size())
    throw std::invalid_argument("iid support and probabilities must have equal size");
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i + 1]))
      throw std::invalid_argument("iid values must be strictly increasing");
  }
  Rational total = 0;
  for (const Rational& p : probs) {
    if (p < 0) throw std::invalid_argument("iid probabilities must be nonnegative");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("iid probabilities must sum to exactly 1");
}

struct IidStats {
  Rational big_p;     // probability of a value at or above the threshold
  Rational avg;       // sum p_i a_i
  Rational avg_plus;  // sum over i >= r
};

IidStats iid_stats(const std::vector<Rational>& values, const std::vector<Rational>& probs,
                   std::size_t r) {
  validate_iid(values, probs);
  if (r > values.size()) throw std::domain_error("threshold index outside [0, k]");
  IidStats s;
  s.big_p = 0;
  s.avg = 0;
  s.avg_plus = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.avg += probs[i] * values[i];
    if (i >= r) {
      s.big_p += probs[i];
      s.avg_plus += probs[i] * values[i];
    }
  }
  return s;
}

}  // namespace

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer b = 0;
  if (k <= n) mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Rational f_tnk(std::uint64_t t, std::uint64_t n, std::uint64_t k) {
  require(n >= 1 && t >= 1 && t <= n, "f(t,n,k) needs 1 <= t <= n");
  require(k >= 1 && k <= n, "f(t,n,k) needs 1 <= k <= n");
  return make_ratio(alt_sum_shifted(n, k, std::min(t, k)), binomial(n - 1, k - 1));
}

IdentityPair identity_sum_f_a(std::uint64_t n, std::uint64_t k) {
  require(n >= 1 && k >= 1 && k <= n, "identity (a) needs 1 <= k <= n");
  Rational lhs = 0;
  for (std::uint64_t t = 1; t <= n; ++t) lhs += f_tnk(t, n, k);
  Rational rhs = Rational(static_cast<unsigned long>(n)) *
                 make_ratio(alt_sum_top(n, k), binomial(n, k - 1));
  return {lhs, rhs};
}

IdentityPair identity_sum_f_b(std::uint64_t n, std::uint64_t k) {
  require(n >= 2 && k >= 1 && k <= n - 1, "identity (b) needs 1 <= k <= n-1");
  const Rational coef(static_cast<unsigned long>(k), static_cast<unsigned long>(n - 1));
  Rational lhs = 0;
  for (std::uint64_t t = 1; t <= n; ++t) {
    // f(0, ., .) = 0 by convention
    Rational f = (t == 1) ? Rational(0) : f_tnk(t - 1, n - 1, k);
    lhs += 1 - coef * f;
  }
  Rational rhs = Rational(static_cast<unsigned long>(n)) -
                 Rational(static_cast<unsigned long>(n)) *
                     make_ratio(alt_sum_shifted(n, k, k), binomial(n, k));
  return {lhs, rhs};
}

Rational asymptotic_coefficient(std::uint64_t n, std::uint64_t k) {
  require(n >= 1 && k >= 1 && k <= n, "coefficient needs 1 <= k <= n");
  return make_ratio(alt_sum_top(n, k), binomial(n, k - 1));
}

Rational perm_opt_relative(std::vector<Rational> values) {
  const std::size_t n = values.size();
  require(n >= 2, "offline permutation mean needs n >= 2");
  std::sort(values.begin(), values.end());
  Rational sum = 0;
  for (std::size_t i = 1; i < n; ++i) sum += Rational(static_cast<unsigned long>(i)) * values[i];
  return sum / Rational(binomial(n, 2));
}

Rational perm_opt_total(std::vector<Rational> values, Horizon horizon) {
  const std::size_t n = values.size();
  require(n >= 2, "offline permutation total needs n >= 2");
  Rational total_weight = 0;
  for (const Rational& v : values) total_weight += v;
  const Rational boundary = total_weight / Rational(static_cast<unsigned long>(n));
  Rational total = Rational(static_cast<unsigned long>(n - 1)) * perm_opt_relative(std::move(values));
  total += horizon == Horizon::NPlusOne ? 2 * boundary : boundary;
  return total;
}

Rational perm_threshold_total(std::vector<Rational> values, std::uint64_t k) {
  const std::size_t n = values.size();
  require(n >= 1, "threshold total needs n >= 1");
  require(k >= 1 && k <= n, "threshold total needs 1 <= k <= n");
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (values[i] == values[i + 1])
      throw std::invalid_argument("permutation analysis needs distinct values");
  }
  Rational below_weight = 0, top_weight = 0;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n - k ? below_weight : top_weight) += values[i];
  }
  const Rational below_coef = 1 - make_ratio(alt_sum_shifted(n, k, k), binomial(n, k));
  const Rational top_coef = make_ratio(alt_sum_top(n, k), binomial(n, k - 1));
  return below_coef * below_weight + 2 * top_coef * top_weight;
}

Rational perm_threshold_relative_asymptotic(const Rational& total_weight,
                                            const Rational& top_weight, std::uint64_t n,
                                            const Rational& c) {
  require(n >= 1, "asymptotic payoff needs n >= 1");
  require(c > 0 && c <= 1, "asymptotic payoff needs c in (0, 1]");
  require(top_weight <= total_weight, "top weight cannot exceed the total");
  return (total_weight + top_weight) / ((1 + c) * Rational(static_cast<unsigned long>(n)));
}

Rational iid_opt_relative(const std::vector<Rational>& values,
                          const std::vector<Rational>& probs) {
  validate_iid(values, probs);
  Rational result = 0;
  for (std::size_t i = 0; i < values.size(); ++i) result += probs[i] * values[i];
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      result += probs[i] * probs[j] * (values[j] - values[i]);
    }
  }
  return result;
}

Rational iid_threshold_relative(const std::vector<Rational>& values,
                                const std::vector<Rational>& probs, std::size_t r) {
  const IidStats s = iid_stats(values, probs, r);
  return (s.avg + s.avg_plus) / (1 + s.big_p);
}

Rational iid_threshold_total(const std::vector<Rational>& values,
                             const std::vector<Rational>& probs, std::size_t r, std::uint64_t n) {
  require(n >= 1, "expected total needs n >= 1");
  const IidStats s = iid_stats(values, probs, r);
  const Rational one_plus = 1 + s.big_p;
  const Rational steps(static_cast<unsigned long>(n));
  const Rational square = one_plus * one_plus;
  const Rational avg_coef = steps / one_plus + (s.big_p + neg_pow(s.big_p, n + 1)) / square;
  const Rational plus_coef = steps / one_plus + (neg_pow(s.big_p, n) - 1) / square;
  return avg_coef * s.avg + plus_coef * s.avg_plus;
}

Rational q_recurrence(std::uint64_t i, const Rational& big_p) {
  require(big_p >= 0 && big_p <= 1, "q recurrence needs P in [0, 1]");
  Rational q = 1;
  for (std::uint64_t j = 0; j < i; ++j) q = 1 - big_p * q;
  return q;
}

Rational q_closed_form(std::uint64_t i, const Rational& big_p) {
  require(big_p >= 0 && big_p <= 1, "q closed form needs P in [0, 1]");
  return (1 - neg_pow(big_p, i + 1)) / (1 + big_p);
}

Rational q_printed_form(std::uint64_t i, const Rational& big_p) {
  require(big_p >= 0 && big_p <= 1, "q printed form needs P in [0, 1]");
  return (1 - neg_pow(big_p, i)) / (1 + big_p);
}

Rational rho(const Rational& c) {
  require(c > 0 && c <= Rational(1, 2), "spectrum parameter outside (0, 1/2]");
  return Rational(1, 2) * (2 - c) / ((1 - c) * (1 + c) * (1 + c));
}

Rational competitive_bound_perm(const Rational& total_weight, const Rational& top_weight,
                                const Rational& c) {
  require(c > 0 && c <= Rational(1, 2), "spectrum parameter outside (0, 1/2]");
  require(total_weight > 0, "total weight must be positive");
  require(top_weight >= 0 && top_weight <= total_weight, "top weight outside [0, A]");
  const Rational share = top_weight / total_weight;
  return Rational(1, 2) / (1 + c) * (1 + share) / ((1 - c) + c * share);
}

PermutationForecast permutation_forecast(std::vector<Rational> values, std::uint64_t k) {
  const std::size_t n = values.size();
  require(n >= 2, "permutation forecast needs n >= 2");
  require(k <= n, "threshold count outside [0, n]");
  std::sort(values.begin(), values.end());

  PermutationForecast f;
  f.n = n;
  f.k = k;
  f.c = Rational(static_cast<unsigned long>(k), static_cast<unsigned long>(n));
  f.total_weight = 0;
  f.below_weight = 0;
  f.top_weight = 0;
  for (std::size_t i = 0; i < n; ++i) {
    f.total_weight += values[i];
    (i < n - k ? f.below_weight : f.top_weight) += values[i];
  }
  f.opt_relative = perm_opt_relative(values);
  f.opt_total = perm_opt_total(values, Horizon::NPlusOne);
  if (k == 0) {
    // threshold above every value: each item is observed exactly once
    f.alg_total_exact = f.total_weight;
    f.alg_relative_asymptotic = f.total_weight / Rational(static_cast<unsigned long>(n));
  } else {
    f.alg_total_exact = perm_threshold_total(values, k);
    f.alg_relative_asymptotic =
        perm_threshold_relative_asymptotic(f.total_weight, f.top_weight, n, f.c);
  }
  return f;
}

IidForecast iid_forecast(const std::vector<Rational>& values, const std::vector<Rational>& probs,
                         std::size_t r, std::uint64_t n) {
  require(n >= 1, "iid forecast needs n >= 1");
  const IidStats s = iid_stats(values, probs, r);
  IidForecast f;
  f.support = values.size();
  f.length = n;
  f.r = r;
  f.c = Rational(static_cast<unsigned long>(values.size() - r),
                 static_cast<unsigned long>(values.size()));
  f.big_p = s.big_p;
  f.avg = s.avg;
  f.avg_plus = s.avg_plus;
  f.opt_relative = iid_opt_relative(values, probs);
  f.alg_total_exact = iid_threshold_total(values, probs, r, n);
  f.alg_relative_asymptotic = iid_threshold_relative(values, probs, r);
  return f;
}

Record to_record(const PermutationForecast& f) {
  Record r;
  r.emplace_back("model", "permutation");
  r.emplace_back("horizon", "n+1");
  r.emplace_back("n", std::to_string(f.n));
  r.emplace_back("k", std::to_string(f.k));
  r.emplace_back("c", rational_str(f.c));
  r.emplace_back("c_denominator", "n");
  r.emplace_back("total_weight", rational_str(f.total_weight));
  r.emplace_back("below_weight", rational_str(f.below_weight));
  r.emplace_back("top_weight", rational_str(f.top_weight));
  r.emplace_back("opt_relative", rational_str(f.opt_relative));
  r.emplace_back("opt_total", rational_str(f.opt_total));
  r.emplace_back("alg_total_exact", rational_str(f.alg_total_exact));
  r.emplace_back("alg_relative_asymptotic", rational_str(f.alg_relative_asymptotic));
  return r;
}

Record to_record(const IidForecast& f) {
  Record r;
  r.emplace_back("model", "iid");
  r.emplace_back("horizon", "n");
  r.emplace_back("support", std::to_string(f.support));
  r.emplace_back("n", std::to_string(f.length));
  r.emplace_back("r", std::to_string(f.r));
  r.emplace_back("c", rational_str(f.c));
  r.emplace_back("c_denominator", "k");
  r.emplace_back("follow_probability", rational_str(f.big_p));
  r.emplace_back("avg", rational_str(f.avg));
  r.emplace_back("avg_plus", rational_str(f.avg_plus));
  r.emplace_back("opt_relative", rational_str(f.opt_relative));
  r.emplace_back("alg_total_exact", rational_str(f.alg_total_exact));
  r.emplace_back("alg_relative_asymptotic", rational_str(f.alg_relative_asymptotic));
  return r;
}

}  // namespace persist::analytics
