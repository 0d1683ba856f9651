#pragma once

#include <cstdint>
#include <vector>

#include "malle/poly.hpp"

namespace malle {

/// Polynomial over F_p (p < 2^32), low-order coefficient first, trimmed.
struct FpPoly {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
  friend bool operator==(const FpPoly&, const FpPoly&) = default;
};

FpPoly reduce(const IntPoly& f, std::uint64_t p);
/// Lift with coefficients in [0, p).
IntPoly lift(const FpPoly& f);

FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly mul(const FpPoly& a, const FpPoly& b);
FpPoly rem(const FpPoly& a, const FpPoly& b);
FpPoly quo(const FpPoly& a, const FpPoly& b);
FpPoly monic(const FpPoly& a);
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly derivative(const FpPoly& a);
/// base^e mod m
FpPoly powmod(FpPoly base, BigInt e, const FpPoly& m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

/// Product of the distinct monic irreducible factors of a non-zero polynomial.
FpPoly radical(const FpPoly& f);

/// Degrees of the irreducible factors of a squarefree monic polynomial,
/// sorted descending (distinct-degree factorization).
std::vector<int> factor_degrees(const FpPoly& f);

/// Kernel of a matrix over F_p acting on row vectors: all v with v*A = 0.
/// A has `rows` rows; returns a basis in reduced form.
std::vector<std::vector<std::uint64_t>> left_kernel(std::vector<std::vector<std::uint64_t>> a,
                                                    std::uint64_t p);

}  // namespace malle
