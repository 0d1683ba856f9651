#pragma once

#include <utility>
#include <vector>

#include "malle/rational.hpp"

namespace malle {

/// Prime factorization of |n| (n != 0) as (prime, exponent), primes ascending.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

bool is_square(const BigInt& n);
bool is_prime(const BigInt& n);

/// Squarefree kernel with sign: n = core · s².
BigInt squarefree_part(const BigInt& n);

}  // namespace malle
