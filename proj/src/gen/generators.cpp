#include "gen/generators.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace persist::gen {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t SplitMix64::bounded(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded(0)");
  // Lemire's multiply-shift with rejection of the biased low region.
  while (true) {
    const std::uint64_t x = next();
    const unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    const std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t cutoff = (0 - n) % n;
      if (low < cutoff) continue;
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix(base + kGolden * (index + 1));
}

IidModel make_iid_model(std::vector<Rational> values, std::vector<Rational> probs,
                        std::size_t length) {
  if (values.empty()) throw std::invalid_argument("iid model needs at least one value");
  if (values.size() != probs.size())
    throw std::invalid_argument("iid model needs one probability per value");
  if (length == 0) throw std::invalid_argument("iid model needs length >= 1");
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
  IidModel model;
  model.values = std::move(values);
  model.probs = std::move(probs);
  model.length = length;
  return model;
}

Stream sample_permutation(std::vector<Rational> values, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("cannot permute an empty multiset");
  SplitMix64 rng(seed);
  for (std::size_t i = values.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(values[i], values[j]);
  }
  return Stream(std::move(values));
}

Stream sample_iid(const IidModel& model, std::uint64_t seed) {
  const std::size_t k = model.values.size();

  // Cumulative 64-bit thresholds: value j is drawn when u < floor(C_j * 2^64),
  // which realizes the exact rational probabilities up to 2^-64 granularity.
  std::vector<std::uint64_t> thresholds(k);
  Rational cumulative = 0;
  for (std::size_t j = 0; j < k; ++j) {
    cumulative += model.probs[j];
    Integer scaled = cumulative.get_num();
    scaled <<= 64;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), cumulative.get_den().get_mpz_t());
    thresholds[j] = mpz_fits_ulong_p(q.get_mpz_t())
                        ? static_cast<std::uint64_t>(mpz_get_ui(q.get_mpz_t()))
                        : std::numeric_limits<std::uint64_t>::max();
  }

  SplitMix64 rng(seed);
  std::vector<Rational> draws;
  draws.reserve(model.length);
  for (std::size_t i = 0; i < model.length; ++i) {
    const std::uint64_t u = rng.next();
    std::size_t j = 0;
    while (j + 1 < k && u >= thresholds[j]) ++j;
    draws.push_back(model.values[j]);
  }
  return Stream(std::move(draws));
}

Stream sample_stream(const StreamModel& model, std::uint64_t seed) {
  return std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PermutationModel>) {
          return sample_permutation(m.values, seed);
        } else {
          return sample_iid(m, seed);
        }
      },
      model);
}

std::uint64_t model_length(const StreamModel& model) {
  return std::visit(
      [](const auto& m) -> std::uint64_t {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PermutationModel>) {
          return m.values.size();
        } else {
          return m.length;
        }
      },
      model);
}

Stream alternating_adversary(const Rational& lo, const Rational& hi, std::size_t n) {
  if (!(lo < hi)) throw std::domain_error("alternating stream needs lo < hi");
  if (n < 2) throw std::domain_error("alternating stream needs n >= 2");
  std::vector<Rational> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values.push_back(i % 2 == 0 ? lo : hi);
  return Stream(std::move(values));
}

DensityReport measure_density(std::vector<Rational> values) {
  const std::size_t t = values.size();
  if (t < 2) throw std::domain_error("density needs at least two values");
  std::sort(values.begin(), values.end(), std::greater<>());

  Rational total = 0;
  for (const Rational& v : values) {
    if (v < 0) throw std::domain_error("density needs nonnegative weights");
    total += v;
  }
  if (total == 0) throw std::domain_error("density undefined for all-zero weights");

  // prefix[m] = weight of the m largest values
  std::vector<Rational> prefix(t / 2 + 1);
  prefix[0] = 0;
  for (std::size_t m = 1; m <= t / 2; ++m) prefix[m] = prefix[m - 1] + values[m - 1];

  auto top_count_at = [&](const Rational& c) -> std::uint64_t {
    Integer q;
    Integer num = c.get_num() * static_cast<unsigned long>(t);
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c.get_den().get_mpz_t());
    return static_cast<std::uint64_t>(mpz_get_ui(q.get_mpz_t()));
  };

  auto evaluate = [&](const Rational& c) -> DensityReport {
    DensityReport r;
    r.c = c;
    r.top_count = top_count_at(c);
    r.lhs = 1 - c;
    r.rhs = prefix[static_cast<std::size_t>(r.top_count)] / total;
    r.residual = r.lhs - r.rhs;
    return r;
  };

  const Rational half(1, 2);
  bool found = false;
  DensityReport best;
  auto consider = [&](const Rational& c) {
    if (!(c > 0) || c > half) return;
    DensityReport r = evaluate(c);
    if (!found || abs(r.residual) < abs(best.residual) ||
        (abs(r.residual) == abs(best.residual) && r.c > best.c)) {
      best = std::move(r);
      found = true;
    }
  };

  // The two sides of the density equation are monotone in opposite
  // directions, so the crossing lies either exactly at some c with
  // 1 - c = prefix[m]/total, or at a grid point m/t where the right side jumps.
  for (std::size_t m = 1; m <= t / 2; ++m) {
    Rational exact = 1 - prefix[m] / total;
    if (exact > 0 && exact <= half && top_count_at(exact) == m) consider(exact);
    consider(Rational(static_cast<unsigned long>(m), static_cast<unsigned long>(t)));
  }
  if (!found) throw std::domain_error("no density candidate in (0, 1/2]");
  return best;
}

std::vector<Rational> synth_c_dense(const Rational& c, std::size_t t) {
  if (!(c > 0) || c > Rational(1, 2)) throw std::domain_error("density parameter outside (0, 1/2]");
  if (t < 2) throw std::domain_error("set size must be at least 2");

  Integer floor_ct;
  Integer num = c.get_num() * static_cast<unsigned long>(t);
  mpz_fdiv_q(floor_ct.get_mpz_t(), num.get_mpz_t(), c.get_den().get_mpz_t());
  if (floor_ct < 1) throw std::domain_error("floor(c*t) must be at least 1");
  const std::size_t m = static_cast<std::size_t>(mpz_get_ui(floor_ct.get_mpz_t()));

  // m copies of h and t-m light copies of 1 with  m*h / (m*h + (t-m)) = 1-c.
  const Rational heavy =
      (1 - c) * Rational(static_cast<unsigned long>(t - m)) /
      (c * Rational(static_cast<unsigned long>(m)));
  if (heavy < 1) throw std::domain_error("infeasible: heavy value would fall below the light value");

  std::vector<Rational> values(t - m, Rational(1));
  values.insert(values.end(), m, heavy);
  return values;
}

}  // namespace persist::gen
