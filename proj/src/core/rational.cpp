#include "core/rational.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace persist {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = (s.front() == '-');
    s.remove_prefix(1);
  }
  if (s.empty()) bad(text);

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if (!whole.empty() && !all_digits(whole)) bad(text);
    if (!frac.empty() && !all_digits(frac)) bad(text);
    Integer n(whole.empty() ? "0" : std::string(whole), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    n *= scale;
    if (!frac.empty()) n += Integer(std::string(frac), 10);
    result = Rational(n, scale);
  } else {
    if (!all_digits(s)) bad(text);
    result = Rational(Integer(std::string(s), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_rational(const Rational& base, std::uint64_t exp) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exp);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational neg_pow(const Rational& p, std::uint64_t exp) {
  Rational r = pow_rational(p, exp);
  if (exp % 2 == 1) r = -r;
  return r;
}

std::vector<Rational> read_rational_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open value file: " + path);
  std::vector<Rational> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string_view s(line);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (s.empty()) continue;
    try {
      values.push_back(parse_rational(s));
    } catch (const std::invalid_argument&) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": not a rational: '" << std::string(s) << "'";
      throw std::invalid_argument(msg.str());
    }
  }
  return values;
}

void write_rational_file(const std::string& path, const std::vector<Rational>& values) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write value file: " + path);
  for (const Rational& v : values) {
    if (v.get_den() == 1) {
      out << v.get_num().get_str() << "\n";
    } else {
      out << rational_str(v) << "\n";
    }
  }
}

}  // namespace persist
