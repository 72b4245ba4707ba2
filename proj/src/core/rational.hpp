#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace persist {

// Exact arithmetic end to end: streams, payoffs and closed forms are all
// rationals so oracle-vs-formula tests can assert bit-exact equality.
// Rational values follow the gmpxx convention of always being canonical;
// build reducible ratios with ratio_of, never the raw two-arg constructor.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational ratio_of(std::uint64_t num, std::uint64_t den) {
  Rational r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

// Accepts "7", "-3/4" and plain decimals like "0.25". Throws
// std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

// Canonical "num/den" rendering, explicit even for integers ("7/1"), so
// emitted records stay uniform and trivially parseable.
std::string rational_str(const Rational& q);

double to_double(const Rational& q);

Rational pow_rational(const Rational& base, std::uint64_t exp);

// (-p)^exp, used by the alternating closed forms.
Rational neg_pow(const Rational& p, std::uint64_t exp);

// Plain-text value format: one rational per line, '#' starts a comment.
std::vector<Rational> read_rational_file(const std::string& path);
void write_rational_file(const std::string& path, const std::vector<Rational>& values);

}  // namespace persist
