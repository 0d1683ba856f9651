#include "malle/quadclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "malle/error.hpp"

namespace malle {
namespace {

using i128 = __int128;

long long floor_mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

// u·a + v·b = g = gcd(a, b) >= 0
void xgcd(long long a, long long b, long long& u, long long& v, long long& g) {
  long long u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = v0 - q * v1;
    v0 = v1;
    v1 = t;
  }
  if (a < 0) {
    a = -a;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  g = a;
}

bool squarefree(long long n) {
  n = std::llabs(n);
  for (long long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool QuadraticForm::is_reduced() const {
  if (a <= 0 || std::llabs(b) > a || a > c) return false;
  if ((std::llabs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::string to_string(const QuadraticForm& f) {
  return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

bool is_fundamental_discriminant(long long D) {
  if (D == 0 || D == 1) return false;
  if (floor_mod(D, 4) == 1) return squarefree(D);
  if (floor_mod(D, 4) != 0) return false;
  long long m = D / 4;
  long long r = floor_mod(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

std::vector<long long> fundamental_discriminants(long long X) {
  std::vector<char> sqf(static_cast<std::size_t>(X) + 1, 1);
  for (long long p = 2; p * p <= X; ++p)
    for (long long k = p * p; k <= X; k += p * p) sqf[k] = 0;
  std::vector<long long> out;
  for (long long n = 3; n <= X; ++n) {
    for (long long D : {-n, n}) {
      bool ok = false;
      if (n % 2 == 1) {
        ok = sqf[n] && floor_mod(D, 4) == 1;
      } else if (n % 4 == 0) {
        long long r = floor_mod(D / 4, 4);
        ok = sqf[n / 4] && (r == 2 || r == 3);
      }
      if (ok) out.push_back(D);
    }
  }
  return out;
}

QuadraticForm reduce(QuadraticForm f) {
  const long long D = f.disc();
  if (f.a <= 0 || D >= 0) throw DomainError("reduce: form must be positive definite");
  auto normalize = [&] {
    // b into (-a, a]
    long long two_a = 2 * f.a;
    long long r = floor_mod(f.b, two_a);
    if (r > f.a) r -= two_a;
    f.b = r;
    f.c = static_cast<long long>((static_cast<i128>(f.b) * f.b - D) / (4 * static_cast<i128>(f.a)));
  };
  normalize();
  while (f.a > f.c) {
    std::swap(f.a, f.c);
    f.b = -f.b;
    normalize();
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadraticForm principal_form(long long D) {
  if (D >= 0 || floor_mod(D, 4) > 1) throw DomainError("principal_form: D must be negative, 0 or 1 mod 4");
  long long b = floor_mod(D, 2);
  return QuadraticForm{1, b, (b * b - D) / 4};
}

QuadraticForm inverse(const QuadraticForm& f) { return reduce(QuadraticForm{f.a, -f.b, f.c}); }

QuadraticForm compose(const QuadraticForm& f1in, const QuadraticForm& f2in) {
  if (f1in.disc() != f2in.disc()) throw DomainError("compose: discriminants differ");
  const long long D = f1in.disc();
  QuadraticForm f1 = f1in, f2 = f2in;
  if (f1.a > f2.a) std::swap(f1, f2);
  const long long s = (f1.b + f2.b) / 2;
  const long long n = f2.b - s;
  long long y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    long long u, v;
    xgcd(f2.a, f1.a, u, v, d);
    y1 = u;
  }
  long long x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    long long yy;
    xgcd(s, d, x2, yy, d1);
    y2 = -yy;
  }
  const long long v1 = f1.a / d1, v2 = f2.a / d1;
  i128 r128 = (static_cast<i128>(y1) * y2 % v1 * (n % v1) - static_cast<i128>(x2) * (f2.c % v1)) % v1;
  if (r128 < 0) r128 += v1;
  const long long r = static_cast<long long>(r128);
  const i128 b3 = static_cast<i128>(f2.b) + 2 * static_cast<i128>(v2) * r;
  const i128 a3 = static_cast<i128>(v1) * v2;
  const i128 num = b3 * b3 - D;
  if (num % (4 * a3) != 0) throw InvariantError("compose: non-integral third coefficient");
  // Reduce b3 modulo 2·a3 before narrowing.
  i128 two_a = 2 * a3;
  i128 bb = b3 % two_a;
  if (bb < 0) bb += two_a;
  QuadraticForm g;
  g.a = static_cast<long long>(a3);
  g.b = static_cast<long long>(bb);
  g.c = static_cast<long long>((static_cast<i128>(g.b) * g.b - D) / (4 * a3));
  return reduce(g);
}

QuadraticForm power(const QuadraticForm& f, unsigned long long e) {
  QuadraticForm result = principal_form(f.disc());
  QuadraticForm base = f;
  while (e) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return result;
}

std::string FormClassGroup::structure() const {
  std::string s = "[";
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(invariant_factors[i]);
  }
  return s + "]";
}

FormClassGroup class_group(long long D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw DomainError("class_group: " + std::to_string(D) + " is not a negative fundamental discriminant");
  if (D < -10000000) throw DomainError("class_group: |D| above 1e7");
  FormClassGroup G;
  G.D = D;
  const long long absD = -D;
  for (long long a = 1; 3 * a * a <= absD; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      if (floor_mod(b - D, 2) != 0) continue;
      long long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      G.reduced_forms.push_back({a, b, c});
    }
  std::sort(G.reduced_forms.begin(), G.reduced_forms.end());
  G.h = static_cast<long long>(G.reduced_forms.size());

  // Invariant factors from the p-power torsion counts of each Sylow subgroup.
  std::map<long long, std::vector<int>> exps;  // p -> exponents, descending
  for (long long p : prime_factors(G.h)) {
    int v = 0;
    long long pv = 1;
    while (G.h % (pv * p) == 0) {
      pv *= p;
      ++v;
    }
    const unsigned long long cofactor = static_cast<unsigned long long>(G.h / pv);
    std::vector<long long> at_most(v + 1, 0);  // #x with ord(x_p) | p^k
    for (const auto& f : G.reduced_forms) {
      QuadraticForm y = power(f, cofactor);
      int k = 0;
      const QuadraticForm one = principal_form(D);
      while (!(y == one)) {
        y = power(y, static_cast<unsigned long long>(p));
        ++k;
        if (k > v) throw InvariantError("class_group: Sylow element order exceeds p^v");
      }
      for (int j = k; j <= v; ++j) ++at_most[j];
    }
    // log_p of Sylow counts
    std::vector<int> lg(v + 1, 0);
    for (int k = 0; k <= v; ++k) {
      long long cnt = at_most[k] / static_cast<long long>(cofactor);
      int l = 0;
      while (cnt > 1) {
        if (cnt % p != 0) throw InvariantError("class_group: torsion count is not a power of p");
        cnt /= p;
        ++l;
      }
      lg[k] = l;
    }
    // s_k = #{i : e_i >= k}
    std::vector<int> e;
    for (int k = 1; k <= v; ++k) {
      int sk = lg[k] - lg[k - 1];
      for (int i = 0; i < sk; ++i) {
        if (static_cast<int>(e.size()) <= i) e.push_back(0);
        e[i] = k;
      }
    }
    exps[p] = e;
  }
  std::size_t rank = 0;
  for (const auto& [p, e] : exps) rank = std::max(rank, e.size());
  std::vector<long long> factors(rank, 1);  // largest first
  for (const auto& [p, e] : exps)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) factors[i] *= p;
  std::reverse(factors.begin(), factors.end());
  G.invariant_factors = factors;
  long long prod = 1;
  for (long long d : factors) prod *= d;
  if (prod != G.h) throw InvariantError("class_group: invariant factors do not multiply to h");
  return G;
}

long long torsion_size(const FormClassGroup& G, long long m) {
  if (m < 1) throw DomainError("torsion_size: m must be positive");
  long long t = 1;
  for (long long d : G.invariant_factors) t *= std::gcd(m, d);
  return t;
}

TorsionExtreme empirical_torsion_exponent(long long m, long long X) {
  if (X < 3) throw DomainError("empirical_torsion_exponent: X must be at least 3");
  TorsionExtreme best;
  best.D = -3;
  for (long long D : fundamental_discriminants(X)) {
    if (D > 0) continue;
    long long t = torsion_size(class_group(D), m);
    double r = std::log(static_cast<double>(t)) / std::log(static_cast<double>(-D));
    if (r > best.ratio + 1e-15) best = {r, D, t};
  }
  return best;
}

std::vector<std::string> torsion_table(long long m, long long X) {
  std::vector<std::string> rows{"D,h,invariant_factors,torsion_m,ratio"};
  for (long long D : fundamental_discriminants(X)) {
    if (D > 0) continue;
    auto G = class_group(D);
    long long t = torsion_size(G, m);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", std::log(static_cast<double>(t)) / std::log(static_cast<double>(-D)));
    rows.push_back(std::to_string(D) + "," + std::to_string(G.h) + ",\"" + G.structure() + "\"," +
                   std::to_string(t) + "," + buf);
  }
  return rows;
}

}  // namespace malle
