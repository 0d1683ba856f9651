#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace malle {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a terminating decimal such as "0.2784" exactly.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

double to_double(const Rational& r);

/// Fixed-point decimal rendering with the given number of places.
std::string to_decimal(const Rational& r, int places);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace malle
