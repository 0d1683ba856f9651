#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "malle/rational.hpp"

namespace malle {

/// Dense integer polynomial; c[i] is the coefficient of x^i. The zero
/// polynomial has an empty coefficient vector.
struct IntPoly {
  std::vector<BigInt> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  /// Coefficients listed from the leading term down to the constant term.
  static IntPoly from_high(const std::vector<long>& coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  const BigInt& lead() const { return c.back(); }
  BigInt coeff(int i) const { return i < 0 || i > degree() ? BigInt(0) : c[i]; }
  void trim();

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

/// Rational-coefficient polynomial with the same layout.
struct RatPoly {
  std::vector<Rational> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly derivative(const IntPoly& f);
BigInt evaluate(const IntPoly& f, const BigInt& x);
/// f(x + s)
IntPoly taylor_shift(const IntPoly& f, const BigInt& s);
/// Exact division by a monic divisor; throws DomainError if the remainder is non-zero.
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);
/// Divisibility test for a monic divisor.
bool divides(const IntPoly& b, const IntPoly& a);

RatPoly to_rat(const IntPoly& f);
RatPoly rat_rem(const RatPoly& a, const RatPoly& b);
RatPoly rat_gcd(RatPoly a, RatPoly b);

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
BigInt determinant(std::vector<std::vector<BigInt>> m);
/// Characteristic polynomial det(xI - A) of a square integer matrix.
IntPoly charpoly(const std::vector<std::vector<BigInt>>& a);

/// Res(f, g) through the Sylvester matrix.
BigInt resultant(const IntPoly& f, const IntPoly& g);
/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
BigInt poly_disc(const IntPoly& f);

/// Number of distinct real roots (Sturm sequence).
int real_root_count(const IntPoly& f);

/// All complex roots of a squarefree polynomial, Newton-polished.
std::vector<std::complex<long double>> complex_roots(const IntPoly& f);

/// "x^3 - x - 1"
std::string to_string(const IntPoly& f);
/// "[1,0,-1,-1]" (leading coefficient first, constant term last)
std::string coeff_list(const IntPoly& f);
/// Accepts "x^3-x-1" style expressions in x or a coefficient list
/// "[1,0,-1,-1]" / "1,0,-1,-1" with the constant term last.
IntPoly parse_poly(std::string_view text);

/// Lexicographic order on coefficient lists from the leading term down.
bool lex_less(const IntPoly& a, const IntPoly& b);

}  // namespace malle
