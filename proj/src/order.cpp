#include "malle/order.hpp"

#include <algorithm>

#include "malle/error.hpp"
#include "malle/factor.hpp"
#include "malle/modp.hpp"

namespace malle {
namespace {

using Vec = std::vector<BigInt>;
using RatVec = std::vector<Rational>;

// a·b mod f in the power basis (f monic of degree n).
Vec mul_mod_f(const Vec& a, const Vec& b, const IntPoly& f) {
  const int n = f.degree();
  Vec prod(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
  }
  for (int k = 2 * n - 2; k >= n; --k) {
    if (prod[k] == 0) continue;
    for (int j = 0; j < n; ++j) prod[k - n + j] -= prod[k] * f.c[j];
    prod[k] = 0;
  }
  prod.resize(n);
  return prod;
}

// Solves c · rows = v for lower-triangular rows.
RatVec solve_lower(const IntMatrix& rows, const RatVec& v) {
  const std::size_t n = rows.size();
  RatVec c(n);
  for (std::size_t jj = n; jj-- > 0;) {
    Rational acc = v[jj];
    for (std::size_t i = jj + 1; i < n; ++i) acc -= c[i] * rows[i][jj];
    c[jj] = acc / rows[jj][jj];
  }
  return c;
}

Vec solve_lower_integral(const IntMatrix& rows, const Vec& v) {
  RatVec rv(v.begin(), v.end());
  RatVec c = solve_lower(rows, rv);
  Vec out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].get_den() != 1) throw InvariantError("element is not in the lattice");
    out[i] = c[i].get_num();
  }
  return out;
}

// Product of two elements given in order coordinates, reduced mod p.
std::vector<std::uint64_t> mul_coords_mod(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b,
                                          const std::vector<std::vector<std::vector<std::uint64_t>>>& t,
                                          std::uint64_t p) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      std::uint64_t ab = mulmod(a[i], b[j], p);
      for (std::size_t k = 0; k < n; ++k)
        if (t[i][j][k]) out[k] = (out[k] + mulmod(ab, t[i][j][k], p)) % p;
    }
  }
  return out;
}

std::uint64_t mod_u(const BigInt& x, std::uint64_t p) {
  BigInt m = static_cast<unsigned long>(p);
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.get_ui();
}

// One Round-2 step at p. Returns true and replaces `order` if it was enlarged.
bool round2_step(const IntPoly& f, OrderBasis& order, std::uint64_t p) {
  const std::size_t n = order.rows.size();
  MulTable T = multiplication_table(f, order);
  std::vector<std::vector<std::vector<std::uint64_t>>> tp(
      n, std::vector<std::vector<std::uint64_t>>(n, std::vector<std::uint64_t>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) tp[i][j][k] = mod_u(T[i][j][k], p);

  // p-radical: kernel of x -> x^q on O/pO with q = p^k >= n.
  BigInt q = static_cast<unsigned long>(p);
  while (q < static_cast<unsigned long>(n)) q *= static_cast<unsigned long>(p);
  std::vector<std::vector<std::uint64_t>> frob(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> base(n, 0), acc(n, 0);
    base[i] = 1;
    acc[0] = 1;  // w_0 = 1 in HNF order bases
    BigInt e = q;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mul_coords_mod(acc, base, tp, p);
      base = mul_coords_mod(base, base, tp, p);
      e >>= 1;
    }
    frob[i] = acc;
  }
  auto rad = left_kernel(frob, p);
  IntMatrix gens;
  for (const auto& v : rad) gens.emplace_back(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(n, 0);
    row[i] = static_cast<unsigned long>(p);
    gens.push_back(row);
  }
  IntMatrix I = hnf_lower(gens, n);

  // U = {x in O : x I ⊆ p I}; kernel of x -> (coords of x·β_j in I) mod p.
  std::vector<std::vector<std::uint64_t>> map(n, std::vector<std::uint64_t>(n * n, 0));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod(n, 0);
      for (std::size_t m = 0; m < n; ++m) {
        if (I[j][m] == 0) continue;
        for (std::size_t k = 0; k < n; ++k) prod[k] += I[j][m] * T[l][m][k];
      }
      Vec c = solve_lower_integral(I, prod);
      for (std::size_t k = 0; k < n; ++k) map[l][j * n + k] = mod_u(c[k], p);
    }
  auto ker = left_kernel(map, p);
  if (ker.empty()) return false;

  IntMatrix ugens;
  for (const auto& v : ker) ugens.emplace_back(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(n, 0);
    row[i] = static_cast<unsigned long>(p);
    ugens.push_back(row);
  }
  IntMatrix U = hnf_lower(ugens, n);
  // New basis (U · rows) / (p · den) in the power basis.
  IntMatrix prow(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (U[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) prow[i][j] += U[i][k] * order.rows[k][j];
    }
  IntMatrix h = hnf_lower(prow, n);
  BigInt den = order.den * static_cast<unsigned long>(p);
  BigInt g = den;
  for (const auto& r : h)
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& r : h)
    for (auto& x : r) x /= g;
  order.rows = std::move(h);
  order.den = den / g;
  return true;
}

BigInt basis_index(const OrderBasis& o) {
  // [O : Z[θ]] = den^n / det(rows)
  const std::size_t n = o.rows.size();
  BigInt det = 1, dn;
  for (std::size_t i = 0; i < n; ++i) det *= o.rows[i][i];
  mpz_pow_ui(dn.get_mpz_t(), o.den.get_mpz_t(), n);
  if (dn % det != 0) throw InvariantError("order index is not an integer");
  return dn / det;
}

}  // namespace

IntMatrix hnf_lower(IntMatrix gens, std::size_t n) {
  IntMatrix out(n);
  std::vector<bool> used(gens.size(), false);
  for (std::size_t col = n; col-- > 0;) {
    std::size_t piv = gens.size();
    for (std::size_t r = 0; r < gens.size(); ++r) {
      if (used[r] || gens[r][col] == 0) continue;
      if (piv == gens.size()) {
        piv = r;
        continue;
      }
      auto& a = gens[piv];
      auto& b = gens[r];
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[col].get_mpz_t(), b[col].get_mpz_t());
      BigInt ag = a[col] / g, bg = b[col] / g;
      for (std::size_t j = 0; j <= col; ++j) {
        BigInt na = s * a[j] + t * b[j];
        BigInt nb = ag * b[j] - bg * a[j];
        a[j] = std::move(na);
        b[j] = std::move(nb);
      }
    }
    if (piv == gens.size()) throw DomainError("lattice generators do not have full rank");
    used[piv] = true;
    if (gens[piv][col] < 0)
      for (auto& x : gens[piv]) x = -x;
    out[col] = gens[piv];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j-- > 0;) {
      BigInt qt;
      mpz_fdiv_q(qt.get_mpz_t(), out[i][j].get_mpz_t(), out[j][j].get_mpz_t());
      if (qt == 0) continue;
      for (std::size_t k = 0; k <= j; ++k) out[i][k] -= qt * out[j][k];
    }
  for (auto& r : out) r.resize(n);
  return out;
}

MulTable multiplication_table(const IntPoly& f, const OrderBasis& basis) {
  const std::size_t n = basis.rows.size();
  MulTable t(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec prod = mul_mod_f(basis.rows[i], basis.rows[j], f);
      RatVec v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = Rational(prod[k], basis.den), v[k].canonicalize();
      RatVec c = solve_lower(basis.rows, v);
      Vec ci(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (c[k].get_den() != 1) throw InvariantError("order basis is not closed under multiplication");
        ci[k] = c[k].get_num();
      }
      t[i][j] = ci;
      t[j][i] = std::move(ci);
    }
  return t;
}

bool dedekind_p_maximal(const IntPoly& f, std::uint64_t p) {
  FpPoly fb = reduce(f, p);
  FpPoly g = radical(fb);
  FpPoly h = quo(fb, g);
  IntPoly G = lift(g), H = lift(h);
  IntPoly diff = G * H - f;
  std::vector<BigInt> Fc;
  for (const auto& x : diff.c) {
    if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) throw InvariantError("Dedekind lift is not congruent to f");
    Fc.push_back(x / static_cast<unsigned long>(p));
  }
  FpPoly Fb = reduce(IntPoly(std::move(Fc)), p);
  FpPoly d = gcd(gcd(Fb, g), h);
  return d.degree() == 0;
}

MaximalOrder maximal_order(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1 || n > 9) throw DomainError("maximal_order supports degrees 1..9");
  if (!f.is_monic()) throw DomainError("maximal_order needs a monic polynomial");
  MaximalOrder mo;
  mo.f = f;
  mo.poly_disc = poly_disc(f);
  if (mo.poly_disc == 0) throw DomainError("polynomial is not squarefree");
  mo.basis.rows.assign(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) mo.basis.rows[i][i] = 1;
  mo.basis.den = 1;

  for (const auto& [p, e] : factorize(mo.poly_disc)) {
    if (e < 2) continue;
    if (!mpz_fits_ulong_p(p.get_mpz_t()) || p > BigInt(4294967291UL))
      throw DomainError("prime " + p.get_str() + " with square dividing disc(f) exceeds 32 bits");
    const std::uint64_t pu = p.get_ui();
    bool dedekind = dedekind_p_maximal(f, pu);
    mo.checked_primes.emplace_back(p, dedekind);
    if (dedekind) continue;
    BigInt before = basis_index(mo.basis);
    int rounds = 0;
    while (round2_step(f, mo.basis, pu)) {
      if (++rounds > 64) throw InvariantError("Round 2 did not stabilize");
    }
    if (basis_index(mo.basis) % (before * p) != 0)
      throw InvariantError("Dedekind reported non-maximal at " + p.get_str() + " but Round 2 did not enlarge");
  }

  mo.index = basis_index(mo.basis);
  BigInt i2 = mo.index * mo.index;
  if (mo.poly_disc % i2 != 0) throw InvariantError("index squared does not divide disc(f)");
  mo.field_disc = mo.poly_disc / i2;
  BigInt r4 = mo.field_disc % 4;
  if (r4 < 0) r4 += 4;
  if (r4 != 0 && r4 != 1) throw InvariantError("field discriminant violates Stickelberger: " + mo.field_disc.get_str());
  mo.table = multiplication_table(f, mo.basis);
  return mo;
}

}  // namespace malle
