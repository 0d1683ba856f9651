#include "malle/modp.hpp"

#include <algorithm>

#include "malle/error.hpp"

namespace malle {

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod p");
  return powmod(a, p - 2, p);
}

FpPoly reduce(const IntPoly& f, std::uint64_t p) {
  FpPoly r{p, {}};
  BigInt m = static_cast<unsigned long>(p);
  for (const auto& x : f.c) {
    BigInt t = x % m;
    if (t < 0) t += m;
    r.c.push_back(t.get_ui());
  }
  r.trim();
  return r;
}

IntPoly lift(const FpPoly& f) {
  std::vector<BigInt> c;
  for (auto x : f.c) c.emplace_back(static_cast<unsigned long>(x));
  return IntPoly(std::move(c));
}

FpPoly add(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, std::vector<std::uint64_t>(std::max(a.c.size(), b.c.size()))};
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0, y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (x + y) % a.p;
  }
  r.trim();
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, std::vector<std::uint64_t>(std::max(a.c.size(), b.c.size()))};
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0, y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (x + a.p - y) % a.p;
  }
  r.trim();
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {a.p, {}};
  FpPoly r{a.p, std::vector<std::uint64_t>(a.c.size() + b.c.size() - 1)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], a.p)) % a.p;
  r.trim();
  return r;
}

namespace {

void divide(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) {
  if (b.is_zero()) throw DomainError("division by zero polynomial mod p");
  const std::uint64_t p = a.p;
  FpPoly rr = a;
  FpPoly qq{p, std::vector<std::uint64_t>(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0)};
  std::uint64_t inv = invmod(b.c.back(), p);
  while (!rr.is_zero() && rr.degree() >= b.degree()) {
    int shift = rr.degree() - b.degree();
    std::uint64_t coef = mulmod(rr.c.back(), inv, p);
    qq.c[shift] = coef;
    for (int j = 0; j <= b.degree(); ++j)
      rr.c[shift + j] = (rr.c[shift + j] + p - mulmod(coef, b.c[j], p)) % p;
    rr.trim();
  }
  qq.trim();
  if (q) *q = std::move(qq);
  if (r) *r = std::move(rr);
}

}  // namespace

FpPoly rem(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  divide(a, b, nullptr, &r);
  return r;
}

FpPoly quo(const FpPoly& a, const FpPoly& b) {
  FpPoly q;
  divide(a, b, &q, nullptr);
  return q;
}

FpPoly monic(const FpPoly& a) {
  if (a.is_zero()) return a;
  FpPoly r = a;
  std::uint64_t inv = invmod(a.c.back(), a.p);
  for (auto& x : r.c) x = mulmod(x, inv, a.p);
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

FpPoly derivative(const FpPoly& a) {
  FpPoly r{a.p, {}};
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mulmod(a.c[i], i % a.p, a.p));
  r.trim();
  return r;
}

FpPoly powmod(FpPoly base, BigInt e, const FpPoly& m) {
  FpPoly r{m.p, {1 % m.p}};
  r.trim();
  base = rem(base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), m);
    base = rem(mul(base, base), m);
    e >>= 1;
  }
  return r;
}

FpPoly radical(const FpPoly& f) {
  // Squarefree part over F_p, handling p-th powers (f' = 0).
  const std::uint64_t p = f.p;
  FpPoly g = monic(f);
  if (g.degree() < 1) return FpPoly{p, {1}};
  FpPoly d = derivative(g);
  if (d.is_zero()) {
    // g(x) = h(x^p) = h(x)^p over F_p.
    FpPoly h{p, {}};
    for (std::size_t i = 0; i < g.c.size(); i += p) h.c.push_back(g.c[i]);
    return radical(h);
  }
  FpPoly c = gcd(g, d);
  FpPoly w = quo(g, c);  // product of the factors with multiplicity prime to p
  // Factors with multiplicity divisible by p survive in c after removing w's.
  FpPoly rest = c;
  for (FpPoly y = gcd(rest, w); y.degree() > 0; y = gcd(rest, w)) rest = quo(rest, y);
  FpPoly out = w;
  if (rest.degree() > 0) {
    FpPoly extra = radical(rest);
    out = mul(out, quo(extra, gcd(extra, out)));
  }
  return monic(out);
}

std::vector<int> factor_degrees(const FpPoly& f) {
  const std::uint64_t p = f.p;
  FpPoly g = monic(f);
  std::vector<int> out;
  FpPoly x{p, {0, 1}};
  FpPoly h = x;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = powmod(h, BigInt(static_cast<unsigned long>(p)), g);
    FpPoly t = gcd(g, sub(h, x));
    if (t.degree() > 0) {
      for (int k = 0; k < t.degree() / d; ++k) out.push_back(d);
      g = quo(g, t);
      h = rem(h, g);
    }
  }
  if (g.degree() > 0) out.push_back(g.degree());
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<std::vector<std::uint64_t>> left_kernel(std::vector<std::vector<std::uint64_t>> a,
                                                    std::uint64_t p) {
  // Solve v*A = 0 by row-reducing [A | I].
  const std::size_t rows = a.size();
  if (rows == 0) return {};
  const std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < rows; ++i) {
    a[i].resize(cols + rows, 0);
    a[i][cols + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = invmod(a[r][col], p);
    for (auto& x : a[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      std::uint64_t f = a[i][col];
      for (std::size_t j = 0; j < cols + rows; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
    }
    ++r;
  }
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t i = r; i < rows; ++i) out.emplace_back(a[i].begin() + cols, a[i].end());
  return out;
}

}  // namespace malle
