#include "incidence/rational.hpp"

#include <cctype>

namespace incidence {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidInput("empty rational literal");

  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw InvalidInput("bad rational literal: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw InvalidInput("bad rational literal: " + s);
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
      throw InvalidInput("bad rational literal: " + s);
    }
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational r;
  const std::string body = s[0] == '+' ? s.substr(1) : s;
  if (r.set_str(body, 10) != 0) throw InvalidInput("bad rational literal: " + s);
  if (r.get_den() == 0) throw InvalidInput("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational ratio(long num, long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2(long exponent) {
  Integer p;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  if (exponent >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

Integer pow4(unsigned long exponent) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 4, exponent);
  return p;
}

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) throw InvalidInput("ceil_log2 of zero");
  unsigned bits = 0;
  std::uint64_t v = 1;
  while (v < n) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

}  // namespace incidence
