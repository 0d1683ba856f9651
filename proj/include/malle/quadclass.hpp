#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace malle {

/// Binary quadratic form a x^2 + b xy + c y^2 of negative discriminant.
struct QuadraticForm {
  long long a = 1, b = 1, c = 1;

  long long disc() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
  friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

std::string to_string(const QuadraticForm& f);

/// D ≡ 1 mod 4 squarefree, or D = 4m with m ≡ 2,3 mod 4 squarefree (D != 1).
bool is_fundamental_discriminant(long long D);

/// Fundamental discriminants D with 0 < |D| <= X, ordered by |D| then sign
/// (negative first).
std::vector<long long> fundamental_discriminants(long long X);

/// Unique reduced form equivalent to f (|b| <= a <= c, b >= 0 if |b| = a or a = c).
QuadraticForm reduce(QuadraticForm f);
/// Gaussian composition followed by reduction.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm principal_form(long long D);
QuadraticForm inverse(const QuadraticForm& f);
QuadraticForm power(const QuadraticForm& f, unsigned long long e);

struct FormClassGroup {
  long long D = 0;
  std::vector<QuadraticForm> reduced_forms;  ///< sorted; principal form first
  std::vector<long long> invariant_factors;  ///< d1 | d2 | ...; empty for h = 1
  long long h = 0;

  std::string structure() const;  ///< "[3,9]" or "[]"
};

/// Class group of the imaginary quadratic order of fundamental discriminant
/// D < 0, |D| <= 1e7. Throws DomainError for other D.
FormClassGroup class_group(long long D);

/// ∏ gcd(m, d_i).
long long torsion_size(const FormClassGroup& G, long long m);

struct TorsionExtreme {
  double ratio = 0;       ///< log|Cl[m]| / log|D|
  long long D = 0;        ///< attaining discriminant (smallest |D| on ties)
  long long torsion = 1;
};

/// Max of log|Cl_D[m]| / log|D| over fundamental -X <= D < 0.
TorsionExtreme empirical_torsion_exponent(long long m, long long X);

/// CSV rows "D,h,invariant_factors,torsion_m,ratio" for all fundamental
/// -X <= D < 0 (header first).
std::vector<std::string> torsion_table(long long m, long long X);

}  // namespace malle
