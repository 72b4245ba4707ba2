#pragma once

#include "core/stream.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace persist::analytics {

// ---------------------------------------------------------------------------
// Binomial building blocks (arbitrary-precision integers throughout).

Integer binomial(std::uint64_t n, std::uint64_t k);

// Probability that the value in position t of a random permutation is
// observed, given it sits at or above a threshold with k values at or above:
//   f(t, n, k) = (1 / C(n-1, k-1)) * sum_{s=0}^{min(t,k)-1} (-1)^s C(n-1-s, k-1-s)
// Requires 1 <= t <= n and 1 <= k <= n.
Rational f_tnk(std::uint64_t t, std::uint64_t n, std::uint64_t k);

struct IdentityPair {
  Rational lhs;
  Rational rhs;
};

// sum_t f(t, n, k)  vs  n * sum_s (-1)^s C(n-s, k-1-s) / C(n, k-1),
// both sides evaluated independently so the caller can assert equality.
IdentityPair identity_sum_f_a(std::uint64_t n, std::uint64_t k);

// sum_t (1 - (k/(n-1)) f(t-1, n-1, k))  vs  n - n * sum_s (-1)^s C(n-1-s, k-1-s) / C(n, k),
// with the convention f(0, ., .) = 0. Requires 1 <= k <= n-1.
IdentityPair identity_sum_f_b(std::uint64_t n, std::uint64_t k);

// (1 / C(n, k-1)) * sum_{s=0}^{k-1} (-1)^s C(n-s, k-1-s); converges to
// 1/(1+c) as n grows with k/n -> c.
Rational asymptotic_coefficient(std::uint64_t n, std::uint64_t k);

// ---------------------------------------------------------------------------
// Random-permutation model.

// Expected offline payoff per interior step: (1/C(n,2)) sum_{i=1}^{n-1} i*a_i
// over the ascending values. Requires n >= 2.
Rational perm_opt_relative(std::vector<Rational> values);

// Expected offline total: the interior steps plus the boundary steps, whose
// expectation is the plain average of the values.
Rational perm_opt_total(std::vector<Rational> values, Horizon horizon);

// Exact expected total payoff of the threshold policy with the k-th largest
// value as threshold, per-item accounting (NPlusOne horizon). Values must be
// distinct; requires 1 <= k <= n.
Rational perm_threshold_total(std::vector<Rational> values, std::uint64_t k);

// Asymptotic per-step payoff (A + L_k) / ((1+c) * n) for total weight A and
// top-k weight L_k.
Rational perm_threshold_relative_asymptotic(const Rational& total_weight,
                                            const Rational& top_weight, std::uint64_t n,
                                            const Rational& c);

// ---------------------------------------------------------------------------
// iid model. Values ascending a_0 < ... < a_{k-1} with probabilities p_i;
// threshold index r means T = a_r, so P = sum_{i>=r} p_i.

Rational iid_opt_relative(const std::vector<Rational>& values,
                          const std::vector<Rational>& probs);

Rational iid_threshold_relative(const std::vector<Rational>& values,
                                const std::vector<Rational>& probs, std::size_t r);

// Exact expected total over the first n steps.
Rational iid_threshold_total(const std::vector<Rational>& values,
                             const std::vector<Rational>& probs, std::size_t r, std::uint64_t n);

// Probability that the observer sits at L0 in the iid model, after i
// decision rounds: q_0 = 1, q_{i+1} = 1 - P q_i.
Rational q_recurrence(std::uint64_t i, const Rational& big_p);
// Closed form sum_{j<=i} (-P)^j = (1 - (-P)^{i+1}) / (1 + P); must agree with
// the recurrence everywhere.
Rational q_closed_form(std::uint64_t i, const Rational& big_p);
// The one-off variant (1 - (-1)^i P^i) / (1 + P), kept callable because it is
// exactly one index behind the recurrence and useful to compare against.
Rational q_printed_form(std::uint64_t i, const Rational& big_p);

// ---------------------------------------------------------------------------
// Competitive-ratio spectrum.

// (1/2) (2-c) / ((1-c)(1+c)^2) for c in (0, 1/2]; equals 2/3 at c = 1/2 and
// tends to 1 as c -> 0.
Rational rho(const Rational& c);

// Ratio lower bound (1/2) * (1/(1+c)) * (1 + L/A) / ((1-c) + c L/A); collapses
// to rho(c) when L/A = 1-c.
Rational competitive_bound_perm(const Rational& total_weight, const Rational& top_weight,
                                const Rational& c);

// ---------------------------------------------------------------------------
// Forecast records: every closed form relevant to one (model, threshold)
// pair, ready for flat serialization with rationals rendered as "p/q".

struct PermutationForecast {
  std::uint64_t n = 0;
  std::uint64_t k = 0;  // values at or above the threshold; 0 means "never move"
  Rational c;           // k/n
  Rational total_weight;          // A
  Rational below_weight;          // A^-
  Rational top_weight;            // A^+ = L_k
  Rational opt_relative;          // interior-step offline mean
  Rational opt_total;             // NPlusOne horizon
  Rational alg_total_exact;       // NPlusOne horizon
  Rational alg_relative_asymptotic;
};

PermutationForecast permutation_forecast(std::vector<Rational> values, std::uint64_t k);

struct IidForecast {
  std::size_t support = 0;  // k
  std::uint64_t length = 0; // n
  std::size_t r = 0;        // threshold index; r = k means "never move"
  Rational c;               // share of the support at or above the threshold
  Rational big_p;           // P
  Rational avg;
  Rational avg_plus;
  Rational opt_relative;
  Rational alg_total_exact;       // NSteps horizon
  Rational alg_relative_asymptotic;
};

IidForecast iid_forecast(const std::vector<Rational>& values, const std::vector<Rational>& probs,
                         std::size_t r, std::uint64_t n);

// Flat key/value records; order is the serialization order.
using Record = std::vector<std::pair<std::string, std::string>>;
Record to_record(const PermutationForecast& f);
Record to_record(const IidForecast& f);

}  // namespace persist::analytics
