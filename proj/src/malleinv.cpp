#include "malle/malleinv.hpp"

#include <algorithm>

#include "malle/error.hpp"

namespace malle {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long smallest_prime(long n) {
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

}  // namespace

std::size_t ind_element(const Permutation& g) { return g.degree() - g.orbit_count(); }

MalleExponent malle_a(const PermGroup& G) {
  if (G.order() <= 1) throw DomainError("malle_a: the group is trivial");
  if (!G.is_transitive()) throw DomainError("malle_a: the group is not transitive");
  std::size_t best = SIZE_MAX, best_i = 0;
  for (std::size_t i = 1; i < G.order(); ++i) {
    std::size_t ind = ind_element(G.element(i));
    if (ind < best) {
      best = ind;
      best_i = i;
    }
  }
  MalleExponent out;
  out.index = best;
  out.value = make_rational(1, static_cast<long>(best));
  out.witness = G.element(best_i);
  out.degree = G.degree();
  return out;
}

Rational malle_a_frobenius_closed_form(long m, long t, long p, long p1) {
  if (m < 2 || t < 2) throw DomainError("closed form needs m >= 2 and t >= 2");
  if (!is_prime(p) || m % p != 0) throw DomainError("closed form: p must be a prime dividing m");
  if (!is_prime(p1) || t % p1 != 0) throw DomainError("closed form: p1 must be a prime dividing t");
  if ((m - 1) % t != 0) throw DomainError("closed form: t must divide m-1");
  Rational candidate_kernel = make_rational(m, p);
  Rational candidate_complement = 1 + make_rational(m - 1, p1);
  Rational ind = Rational(m) - std::max(candidate_kernel, candidate_complement);
  Rational out = 1 / ind;
  out.canonicalize();
  return out;
}

Rational malle_a_regular_closed_form(long order, long p) {
  if (order < 2) throw DomainError("regular closed form needs order >= 2");
  if (p != smallest_prime(order))
    throw DomainError("regular closed form: " + std::to_string(p) +
                      " is not the smallest prime divisor of " + std::to_string(order));
  return make_rational(p, order * (p - 1));
}

}  // namespace malle
