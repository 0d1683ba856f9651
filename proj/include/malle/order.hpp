#pragma once

#include <cstdint>
#include <vector>

#include "malle/poly.hpp"

namespace malle {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Lower-triangular Hermite normal form of the row lattice spanned by `gens`
/// (any number of rows, full column rank n). Diagonal entries are positive
/// and entries left of the diagonal are reduced modulo the diagonal of their
/// column. Throws DomainError if the rows do not have rank n.
IntMatrix hnf_lower(IntMatrix gens, std::size_t n);

/// Z-basis of an order of Q[x]/(f): element i is (Σ_j rows[i][j] θ^j) / den.
struct OrderBasis {
  IntMatrix rows;
  BigInt den = 1;
};

/// Structure constants: w_i w_j = Σ_k table[i][j][k] w_k.
using MulTable = std::vector<std::vector<std::vector<BigInt>>>;

struct MaximalOrder {
  IntPoly f;
  BigInt poly_disc;
  BigInt field_disc;
  BigInt index;  ///< [O_K : Z[θ]]
  OrderBasis basis;
  MulTable table;
  /// Primes p with p^2 | disc(f), and whether Dedekind certified Z[θ] there.
  std::vector<std::pair<BigInt, bool>> checked_primes;
};

/// Dedekind criterion: is Z[θ] maximal at p?
bool dedekind_p_maximal(const IntPoly& f, std::uint64_t p);

/// Maximal order of Q[x]/(f) for a monic irreducible f of degree <= 9, by
/// Dedekind tests and Round-2 (Pohst-Zassenhaus) enlargement at each prime
/// whose square divides disc(f). Throws InvariantError if a consistency
/// certificate fails.
MaximalOrder maximal_order(const IntPoly& f);

/// Multiplication table of the order in its own basis; throws InvariantError
/// if the basis is not closed under multiplication.
MulTable multiplication_table(const IntPoly& f, const OrderBasis& basis);

}  // namespace malle
