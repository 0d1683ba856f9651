#include "malle/factor.hpp"

#include <algorithm>
#include <map>

#include "malle/error.hpp"

namespace malle {
namespace {

// Brent's variant of Pollard rho; n odd composite.
BigInt rho(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const BigInt& v) {
      BigInt t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt d = abs(x - y);
          q = q * d % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split(root, out);
    split(root, out);
    return;
  }
  BigInt d = rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

bool is_prime(const BigInt& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

bool is_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  BigInt m = abs(n);
  std::map<BigInt, unsigned> found;
  for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[BigInt(p)];
      m /= p;
    }
  }
  split(m, found);
  return {found.begin(), found.end()};
}

BigInt squarefree_part(const BigInt& n) {
  BigInt core = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2) core *= p;
  return core;
}

}  // namespace malle
