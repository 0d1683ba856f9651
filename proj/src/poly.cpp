#include "malle/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "malle/error.hpp"

namespace malle {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_high(const std::vector<long>& coeffs) {
  std::vector<BigInt> c(coeffs.rbegin(), coeffs.rend());
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void RatPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(r));
}

IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return {};
  std::vector<BigInt> r(f.c.size() - 1);
  for (std::size_t i = 1; i < f.c.size(); ++i) r[i - 1] = f.c[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(r));
}

BigInt evaluate(const IntPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly taylor_shift(const IntPoly& f, const BigInt& s) {
  std::vector<BigInt> a = f.c;
  const int n = f.degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) a[j] += s * a[j + 1];
  return IntPoly(std::move(a));
}

namespace {

// Quotient and remainder for a monic divisor.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
  if (!b.is_monic()) throw DomainError("divisor must be monic");
  if (a.degree() < b.degree()) return {IntPoly{}, a};
  std::vector<BigInt> r = a.c, q(a.c.size() - b.c.size() + 1);
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    q[i] = r[i + b.degree()];
    if (q[i] == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) r[i + j] -= q[i] * b.c[j];
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

}  // namespace

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod_monic(a, b);
  if (!r.is_zero()) throw DomainError("polynomial division is not exact");
  return q;
}

bool divides(const IntPoly& b, const IntPoly& a) { return divmod_monic(a, b).second.is_zero(); }

RatPoly to_rat(const IntPoly& f) {
  RatPoly r;
  for (const auto& x : f.c) r.c.emplace_back(x);
  return r;
}

RatPoly rat_rem(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  RatPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rational q = r.c.back() / b.c.back();
    int shift = r.degree() - b.degree();
    for (int j = 0; j <= b.degree(); ++j) r.c[shift + j] -= q * b.c[j];
    r.trim();
  }
  return r;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    RatPoly r = rat_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    Rational l = a.c.back();
    for (auto& x : a.c) x /= l;
  }
  return a;
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntPoly charpoly(const std::vector<std::vector<BigInt>>& a) {
  // Faddeev-LeVerrier; every division is exact over the integers.
  const std::size_t n = a.size();
  std::vector<BigInt> coef(n + 1);
  coef[n] = 1;
  std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n)), AM(n, std::vector<BigInt>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) M[i][i] += coef[n - k + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * M[l][j];
        AM[i][j] = s;
      }
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), k);
    coef[n - k] = -q;
    M = AM;
  }
  return IntPoly(std::move(coef));
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), f.c[0].get_mpz_t(), n);
    return r;
  }
  if (n == 0) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), g.c[0].get_mpz_t(), m);
    return r;
  }
  const int size = m + n;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f.c[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.c[n - j];
  return determinant(std::move(s));
}

BigInt poly_disc(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("discriminant needs degree >= 1");
  if (n == 1) return 1;
  BigInt r = resultant(f, derivative(f));
  BigInt q;
  mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
  return (n * (n - 1) / 2) % 2 ? BigInt(-q) : q;
}

int real_root_count(const IntPoly& f) {
  if (f.degree() < 1) return 0;
  std::vector<RatPoly> seq{to_rat(f), to_rat(derivative(f))};
  while (!seq.back().is_zero()) {
    RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
    for (auto& x : r.c) x = -x;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  auto changes = [&](bool at_plus) {
    int count = 0, prev = 0;
    for (const auto& p : seq) {
      int s = sgn(p.c.back());
      if (!at_plus && p.degree() % 2) s = -s;
      if (s != 0 && prev != 0 && s != prev) ++count;
      if (s != 0) prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

std::vector<std::complex<long double>> complex_roots(const IntPoly& f) {
  using C = std::complex<long double>;
  const int n = f.degree();
  if (n < 1) return {};
  std::vector<long double> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = f.c[i].get_d() / f.lead().get_d();
  auto eval = [&](C z, C& dz) {
    C p = 1, d = 0;
    for (int i = n - 1; i >= 0; --i) {
      d = d * z + p;
      p = p * z + a[i];
    }
    dz = d;
    return p;
  };
  long double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::pow(std::fabs(a[i]), 1.0L / (n - i)));
  bound = 2 * bound + 1e-3L;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(bound * 0.5L, (2 * M_PIl * k) / n + 0.4L);
  // Aberth iteration.
  for (int iter = 0; iter < 1000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      C d;
      C p = eval(z[k], d);
      if (p == C(0)) continue;
      C ratio = p / d;
      C sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      C step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  for (auto& r : z)
    for (int i = 0; i < 3; ++i) {
      C d;
      C p = eval(r, d);
      if (d != C(0)) r -= p / d;
    }
  std::sort(z.begin(), z.end(), [](const C& x, const C& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return z;
}

std::string to_string(const IntPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const BigInt& a = f.c[i];
    if (a == 0) continue;
    BigInt mag = abs(a);
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

std::string coeff_list(const IntPoly& f) {
  std::string out = "[";
  for (int i = f.degree(); i >= 0; --i) {
    out += f.c[i].get_str();
    if (i) out += ",";
  }
  return out + "]";
}

bool lex_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

IntPoly parse_poly(std::string_view text) {
  std::string s;
  std::vector<int> col;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
      col.push_back(static_cast<int>(i) + 1);
    }
  col.push_back(static_cast<int>(text.size()) + 1);
  if (s.empty()) throw ParseError("empty polynomial", 1, 1);
  auto fail = [&](const std::string& what, std::size_t pos) {
    throw ParseError(what, 1, col[std::min(pos, col.size() - 1)]);
  };
  auto read_int = [&](std::size_t& pos, BigInt& out) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected digits", pos);
    out = BigInt(s.substr(start, pos - start));
  };

  if (s.find('x') == std::string::npos) {
    // Coefficient list, leading coefficient first.
    std::size_t pos = 0;
    if (s[pos] == '[') ++pos;
    std::vector<BigInt> high;
    while (pos < s.size() && s[pos] != ']') {
      bool neg = false;
      if (s[pos] == '-' || s[pos] == '+') neg = s[pos++] == '-';
      BigInt v;
      read_int(pos, v);
      high.push_back(neg ? BigInt(-v) : v);
      if (pos < s.size() && s[pos] == ',') ++pos;
      else if (pos < s.size() && s[pos] != ']') fail("expected ',' in coefficient list", pos);
    }
    if (s[0] == '[' && (pos >= s.size() || s[pos] != ']')) fail("missing ']'", pos);
    if (pos < s.size() && s[pos] == ']' && pos + 1 != s.size()) fail("trailing characters", pos + 1);
    std::vector<BigInt> low(high.rbegin(), high.rend());
    IntPoly f(std::move(low));
    if (f.is_zero()) fail("zero polynomial", 0);
    return f;
  }

  std::vector<BigInt> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'", pos);
    }
    BigInt coef = 1;
    bool have_coef = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      read_int(pos, coef);
      have_coef = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    unsigned long exp = 0;
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      exp = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        BigInt e;
        read_int(pos, e);
        if (e > 64) fail("exponent too large", pos);
        exp = e.get_ui();
      }
    } else if (!have_coef) {
      fail("expected a term", pos);
    }
    if (coeffs.size() <= exp) coeffs.resize(exp + 1);
    coeffs[exp] += sign * coef;
  }
  IntPoly f(std::move(coeffs));
  if (f.is_zero()) fail("zero polynomial", 0);
  return f;
}

}  // namespace malle
