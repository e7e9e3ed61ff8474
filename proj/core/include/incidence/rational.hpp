#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace incidence {

using Rational = mpq_class;
using Integer = mpz_class;

/// A bound that may be infinite; nullopt stands for -inf (lower) or +inf (upper).
using Bound = std::optional<Rational>;

/// Malformed or inconsistent input (dimension mismatch, bad range, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well formed but outside what an operation supports
/// (vertical hyperplanes, non-box ranges handed to a box algorithm, ...).
class Unsupported : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal guarantee failed at runtime. Never expected; surfaced loudly.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parses "p/q", "p", or a finite decimal such as "-1.25".
Rational parse_rational(std::string_view text);

/// num/den in canonical form; throws InvalidInput when den == 0. Use this
/// instead of the two-argument Rational constructor, which does not reduce.
Rational ratio(long num, long den);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& value);

/// floor(value) as an arbitrary precision integer.
Integer floor_of(const Rational& value);

/// 2^exponent for any (possibly negative) exponent.
Rational pow2(long exponent);

/// 4^exponent, exponent >= 0.
Integer pow4(unsigned long exponent);

/// ceil(log2(n)) for n >= 1.
unsigned ceil_log2(std::uint64_t n);

}  // namespace incidence
