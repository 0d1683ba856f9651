#pragma once

#include <cstddef>

#include "malle/perm.hpp"
#include "malle/rational.hpp"

namespace malle {

/// a(G, d) = 1/ind(G) together with the element attaining ind(G).
struct MalleExponent {
  Rational value;
  Permutation witness;   ///< first element (in element order) with ind = ind(G)
  std::size_t index = 0; ///< ind(G)
  std::size_t degree = 0;
};

/// d minus the number of orbits of g; 0 exactly for the identity.
std::size_t ind_element(const Permutation& g);

/// Minimum index over non-identity elements of a transitive, non-trivial G.
MalleExponent malle_a(const PermGroup& G);

/// 1 / (m - max(m/p, 1 + (m-1)/p1)) for C_m ⋊ C_t acting on m points.
/// Requires p | m, p1 | t and t | m-1.
Rational malle_a_frobenius_closed_form(long m, long t, long p, long p1);

/// p / (order·(p-1)) for the regular action; p must be the smallest prime
/// divisor of order.
Rational malle_a_regular_closed_form(long order, long p);

}  // namespace malle
