#include "malle/field.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "malle/error.hpp"
#include "malle/factor.hpp"
#include "malle/modp.hpp"
#include "malle/perm.hpp"
#include "malle/report.hpp"

namespace malle {
namespace {

using Cx = std::complex<long double>;

bool small_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t p) {
  do ++p;
  while (!small_prime(p));
  return p;
}

bool divisible(const BigInt& n, std::uint64_t p) {
  return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

void require_monic(const IntPoly& f, const char* who) {
  if (f.degree() < 1 || !f.is_monic())
    throw DomainError(std::string(who) + ": polynomial must be monic of degree >= 1");
}

// Subset sums of factor degrees: the degrees any rational factor could have.
std::vector<bool> achievable_degrees(const std::vector<int>& degs, int n) {
  std::vector<bool> ok(n + 1, false);
  ok[0] = true;
  for (int d : degs)
    for (int s = n; s >= d; --s)
      if (ok[s - d]) ok[s] = true;
  return ok;
}

// Integer polynomial from complex roots, if every coefficient is close to an integer.
std::optional<IntPoly> round_product(const std::vector<Cx>& roots) {
  std::vector<Cx> c{Cx(1)};
  for (const Cx& r : roots) {
    std::vector<Cx> next(c.size() + 1, Cx(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<BigInt> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    long double re = c[i].real(), im = c[i].imag();
    long double scale = 1 + std::fabs(re);
    if (std::fabs(im) > 1e-6L * scale) return std::nullopt;
    long double r = std::round(re);
    if (std::fabs(re - r) > 1e-6L * scale) return std::nullopt;
    std::ostringstream os;
    os.precision(0);
    os << std::fixed << r;
    out[i] = BigInt(os.str());
  }
  return IntPoly(std::move(out));
}

bool is_square_or_zero(const BigInt& x) { return x == 0 || (x > 0 && is_square(x)); }

// δ is a square in Q(√Δ).
bool square_in_quadratic(const BigInt& delta, const BigInt& disc) {
  return is_square_or_zero(delta) || is_square_or_zero(delta * disc);
}

std::vector<BigInt> integer_roots(const IntPoly& f) {
  std::vector<BigInt> out;
  if (f.c[0] == 0) out.push_back(0);
  for (const Cx& r : complex_roots(f)) {
    if (std::fabs(r.imag()) > 1e-6L * (1 + std::fabs(r.real()))) continue;
    std::ostringstream os;
    os.precision(0);
    os << std::fixed << std::round(r.real());
    BigInt z(os.str());
    if (evaluate(f, z) == 0 && std::find(out.begin(), out.end(), z) == out.end())
      out.push_back(z);
  }
  return out;
}

TransitiveGroupInfo make_info(int degree, int t, std::string name, const PermGroup& G) {
  TransitiveGroupInfo info;
  info.degree = degree;
  info.t = t;
  info.name = std::move(name);
  info.order = G.order();
  info.even = true;
  for (const auto& g : G.elements()) {
    if (!g.is_even()) info.even = false;
    ++info.cycle_types[g.cycle_type()];
  }
  return info;
}

PermGroup from_gens(std::size_t d, const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  for (const auto& c : cycles) gens.push_back(Permutation::parse_cycles(c, d));
  return PermGroup::closure(gens, d);
}

ElementSet subgroup_elements(std::size_t d, const std::vector<std::string>& cycles) {
  return from_gens(d, cycles).elements();
}

std::vector<TransitiveGroupInfo> build_transitive_groups() {
  std::vector<TransitiveGroupInfo> v;
  v.push_back(make_info(2, 1, "C2", from_gens(2, {"(1 2)"})));
  v.push_back(make_info(3, 1, "C3", from_gens(3, {"(1 2 3)"})));
  v.push_back(make_info(3, 2, "S3", from_gens(3, {"(1 2 3)", "(1 2)"})));
  v.push_back(make_info(4, 1, "C4", from_gens(4, {"(1 2 3 4)"})));
  v.push_back(make_info(4, 2, "V4", from_gens(4, {"(1 2)(3 4)", "(1 3)(2 4)"})));
  v.push_back(make_info(4, 3, "D4", from_gens(4, {"(1 2 3 4)", "(1 3)"})));
  v.push_back(make_info(4, 4, "A4", from_gens(4, {"(1 2 3)", "(2 3 4)"})));
  v.push_back(make_info(4, 5, "S4", from_gens(4, {"(1 2 3 4)", "(1 2)"})));
  v.push_back(make_info(5, 1, "C5", from_gens(5, {"(1 2 3 4 5)"})));
  v.push_back(make_info(5, 2, "D5", from_gens(5, {"(1 2 3 4 5)", "(2 5)(3 4)"})));
  v.push_back(make_info(5, 3, "F20", from_gens(5, {"(1 2 3 4 5)", "(2 3 5 4)"})));
  v.push_back(make_info(5, 4, "A5", from_gens(5, {"(1 2 3 4 5)", "(1 2 3)"})));
  v.push_back(make_info(5, 5, "S5", from_gens(5, {"(1 2 3 4 5)", "(1 2)"})));

  const PermGroup s3 = from_gens(3, {"(1 2 3)", "(1 2)"});
  const PermGroup a4 = from_gens(4, {"(1 2 3)", "(2 3 4)"});
  const PermGroup s4 = from_gens(4, {"(1 2 3 4)", "(1 2)"});
  v.push_back(make_info(6, 1, "C6", from_gens(6, {"(1 2 3 4 5 6)"})));
  v.push_back(make_info(6, 2, "S3", regular_action(s3)));
  v.push_back(make_info(6, 3, "D6", from_gens(6, {"(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"})));
  v.push_back(make_info(6, 4, "A4", coset_action(a4, subgroup_elements(4, {"(1 2)(3 4)"}))));
  v.push_back(make_info(6, 5, "F18", from_gens(6, {"(1 2 3)", "(1 4)(2 5)(3 6)"})));
  v.push_back(make_info(6, 6, "2A4", from_gens(6, {"(1 4)", "(1 2 3)(4 5 6)"})));
  v.push_back(make_info(6, 7, "S4+", coset_action(s4, subgroup_elements(4, {"(1 2)", "(3 4)"}))));
  v.push_back(make_info(6, 8, "S4", coset_action(s4, subgroup_elements(4, {"(1 2 3 4)"}))));
  v.push_back(make_info(6, 9, "S3xS3",
                        from_gens(6, {"(1 2 3)", "(4 5 6)", "(1 2)(4 5)", "(1 4)(2 5)(3 6)"})));
  v.push_back(make_info(6, 10, "F36", from_gens(6, {"(1 2 3)", "(4 5 6)", "(1 4 2 5)(3 6)"})));
  v.push_back(make_info(6, 11, "2S4", from_gens(6, {"(1 4)", "(1 2 3)(4 5 6)", "(1 2)(4 5)"})));
  v.push_back(make_info(6, 12, "A5", from_gens(6, {"(1 2 3 4 5)", "(1 6)(2 5)"})));
  v.push_back(make_info(6, 13, "F36:2", from_gens(6, {"(1 2 3)", "(1 2)", "(1 4)(2 5)(3 6)"})));
  v.push_back(make_info(6, 14, "S5", from_gens(6, {"(1 2 3 4 5)", "(1 6)(2 5)", "(2 3 5 4)"})));
  v.push_back(make_info(6, 15, "A6", from_gens(6, {"(1 2 3 4 5)", "(4 5 6)"})));
  v.push_back(make_info(6, 16, "S6", from_gens(6, {"(1 2 3 4 5 6)", "(1 2)"})));
  return v;
}

GaloisLabel label_of(int degree, int t, Confidence conf) {
  const auto& info = transitive_group(degree, t);
  return GaloisLabel{degree, t, info.name, conf};
}

// Lattice helpers for the canonical generator search. Vectors are real
// embeddings of order elements (real and imaginary parts interleaved).
using RVec = std::vector<long double>;

long double dot(const RVec& a, const RVec& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// LLL (delta = 0.99) on row vectors b, applying the same moves to the
// integer coordinate matrix u.
void lll(std::vector<RVec>& b, std::vector<std::vector<long long>>& u) {
  const std::size_t n = b.size();
  auto gso = [&](std::vector<RVec>& bs, std::vector<std::vector<long double>>& mu,
                 std::vector<long double>& norm) {
    bs = b;
    mu.assign(n, std::vector<long double>(n, 0));
    norm.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / norm[j];
        for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      norm[i] = dot(bs[i], bs[i]);
    }
  };
  std::vector<RVec> bs;
  std::vector<std::vector<long double>> mu;
  std::vector<long double> norm;
  gso(bs, mu, norm);
  std::size_t k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      long double q = std::round(mu[k][j]);
      if (q == 0) continue;
      for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
      for (std::size_t t = 0; t < n; ++t) u[k][t] -= static_cast<long long>(q) * u[j][t];
      gso(bs, mu, norm);
    }
    if (norm[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gso(bs, mu, norm);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

struct ShortVector {
  long double norm;
  std::vector<long long> y;
};

// Fincke-Pohst: all non-zero integer y with |Σ y_i b_i|^2 <= bound.
std::vector<ShortVector> short_vectors(const std::vector<RVec>& b, long double bound,
                                       std::size_t cap) {
  const std::size_t n = b.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = dot(b[i], b[j]);
  // q[i][i] = r_ii^2, q[i][j] = r_ij / r_ii for the Cholesky factor.
  std::vector<std::vector<long double>> q = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  std::vector<ShortVector> out;
  std::vector<long long> y(n, 0);
  std::vector<long double> remaining(n + 1, 0);
  remaining[n] = bound;
  std::function<void(std::size_t)> rec = [&](std::size_t i1) {
    const std::size_t i = i1 - 1;
    long double centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= q[i][j] * y[j];
    long double rad = std::sqrt(std::max<long double>(remaining[i1], 0) / q[i][i]);
    long long lo = static_cast<long long>(std::ceil(centre - rad - 1e-12L));
    long long hi = static_cast<long long>(std::floor(centre + rad + 1e-12L));
    for (long long v = lo; v <= hi; ++v) {
      y[i] = v;
      long double diff = v - centre;
      long double rem = remaining[i1] - q[i][i] * diff * diff;
      if (rem < -1e-9L * bound) continue;
      remaining[i] = rem;
      if (i == 0) {
        bool zero = std::all_of(y.begin(), y.end(), [](long long t) { return t == 0; });
        if (!zero) {
          out.push_back({bound - rem, y});
          if (out.size() > cap) return;
        }
      } else {
        rec(i);
        if (out.size() > cap) return;
      }
    }
    y[i] = 0;
  };
  rec(n);
  return out;
}

// Multiplication-by-x matrix in the order basis, for x with integer coordinates c.
std::vector<std::vector<BigInt>> mult_matrix(const MulTable& t, const std::vector<BigInt>& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    if (c[j] == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m[i][k] += c[j] * t[i][j][k];
  }
  return m;
}

// Two-variable arithmetic in Q[y,z]/(f(y), f(z)) for a monic cubic f; basis y^i z^j.
using Bi = std::array<std::array<BigInt, 3>, 3>;

Bi times_y(const Bi& a, const IntPoly& f) {
  Bi r{};
  for (auto& row : r) row.fill(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (a[i][j] == 0) continue;
      if (i < 2) {
        r[i + 1][j] += a[i][j];
      } else {
        for (int k = 0; k < 3; ++k) r[k][j] -= a[i][j] * f.c[k];
      }
    }
  return r;
}

Bi transpose(const Bi& a) {
  Bi r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

Bi times_z(const Bi& a, const IntPoly& f) { return transpose(times_y(transpose(a), f)); }

IntPoly sextic_from(const IntPoly& f, long cy, long cz, const IntPoly& diagonal) {
  std::vector<std::vector<BigInt>> m(9, std::vector<BigInt>(9, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Bi e{};
      for (auto& row : e) row.fill(0);
      e[i][j] = 1;
      Bi y = times_y(e, f), z = times_z(e, f);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m[3 * i + j][3 * a + b] = cy * y[a][b] + cz * z[a][b];
    }
  return exact_divide(charpoly(m), diagonal);
}

}  // namespace

bool is_irreducible(const IntPoly& f) {
  require_monic(f, "is_irreducible");
  const int n = f.degree();
  if (n > 8) throw DomainError("is_irreducible: degree above 8");
  if (n == 1) return true;
  const BigInt disc = poly_disc(f);
  if (disc == 0) return false;
  std::vector<bool> possible(n + 1, true);
  int used = 0;
  for (std::uint64_t p = 2; used < 40; p = next_prime(p)) {
    if (divisible(disc, p)) continue;
    ++used;
    auto ok = achievable_degrees(factor_degrees(reduce(f, p)), n);
    if (ok[n] && std::count(ok.begin() + 1, ok.end() - 1, true) == 0) return true;
    bool any = false;
    for (int d = 1; d < n; ++d) {
      possible[d] = possible[d] && ok[d];
      any = any || possible[d];
    }
    if (!any) return true;
  }
  const auto roots = complex_roots(f);
  for (int d = 1; d <= n / 2; ++d) {
    if (!possible[d]) continue;
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<Cx> sub;
      for (int i : idx) sub.push_back(roots[i]);
      if (auto g = round_product(sub); g && divides(*g, f)) return false;
      int k = d - 1;
      while (k >= 0 && idx[k] == n - d + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

std::pair<BigInt, BigInt> maximal_order_disc(const IntPoly& f) {
  require_monic(f, "maximal_order_disc");
  if (f.degree() > 8) throw DomainError("maximal_order_disc: degree above 8");
  if (!is_irreducible(f)) throw DomainError("maximal_order_disc: polynomial is reducible");
  MaximalOrder mo = maximal_order(f);
  return {mo.field_disc, mo.index};
}

std::string to_string(Confidence c) { return c == Confidence::Certified ? "certified" : "sampled"; }

const std::vector<TransitiveGroupInfo>& transitive_groups() {
  static const std::vector<TransitiveGroupInfo> groups = build_transitive_groups();
  return groups;
}

const TransitiveGroupInfo& transitive_group(int degree, int t) {
  for (const auto& g : transitive_groups())
    if (g.degree == degree && g.t == t) return g;
  throw DomainError("unknown transitive group " + std::to_string(degree) + "T" + std::to_string(t));
}

std::vector<int> frobenius_cycle_type(const IntPoly& f, std::uint64_t p) {
  require_monic(f, "frobenius_cycle_type");
  FpPoly fp = reduce(f, p);
  if (fp.degree() != f.degree() || radical(fp).degree() != fp.degree())
    throw DomainError("frobenius_cycle_type: prime divides the discriminant");
  return factor_degrees(fp);
}

GaloisLabel sampled_galois_label(const IntPoly& f, std::uint64_t seed, int samples) {
  require_monic(f, "sampled_galois_label");
  const int n = f.degree();
  if (n < 2 || n > 6) throw DomainError("sampled_galois_label: degree must be 2..6");
  const BigInt disc = poly_disc(f);
  if (disc == 0) throw DomainError("sampled_galois_label: polynomial is not squarefree");
  const bool even = disc > 0 && is_square(disc);

  std::map<std::vector<std::size_t>, int> seen;
  std::uint64_t p = 2;
  for (std::uint64_t skip = seed % 1000; skip > 0; --skip) p = next_prime(p);
  int got = 0, tried = 0;
  for (; got < samples; p = next_prime(p)) {
    if (++tried > samples * 50)
      throw DomainError("galois label inconclusive: too few unramified primes in the window");
    if (divisible(disc, p)) continue;
    auto degs = factor_degrees(reduce(f, p));
    std::vector<std::size_t> type(degs.begin(), degs.end());
    std::sort(type.rbegin(), type.rend());
    ++seen[type];
    ++got;
  }
  const TransitiveGroupInfo* best = nullptr;
  long double best_score = -INFINITY;
  bool tie = false;
  for (const auto& g : transitive_groups()) {
    if (g.degree != n || g.even != even) continue;
    long double score = 0;
    bool possible = true;
    for (const auto& [type, count] : seen) {
      auto it = g.cycle_types.find(type);
      if (it == g.cycle_types.end()) {
        possible = false;
        break;
      }
      score += count * std::log(static_cast<long double>(it->second) / g.order);
    }
    if (!possible) continue;
    if (best && std::fabs(score - best_score) < 1e-9L) tie = true;
    if (score > best_score + 1e-9L) {
      best = &g;
      best_score = score;
      tie = false;
    }
  }
  if (!best || tie) throw DomainError("galois label inconclusive for " + to_string(f));
  return GaloisLabel{n, best->t, best->name, Confidence::Sampled};
}

GaloisLabel galois_label(const IntPoly& f, std::uint64_t seed) {
  require_monic(f, "galois_label");
  const int n = f.degree();
  if (n < 2 || n > 6) throw DomainError("galois_label: degree must be 2..6");
  if (!is_irreducible(f)) throw DomainError("galois_label: polynomial is reducible");
  const BigInt disc = poly_disc(f);
  const bool square = disc > 0 && is_square(disc);
  if (n == 2) return label_of(2, 1, Confidence::Certified);
  if (n == 3) return label_of(3, square ? 1 : 2, Confidence::Certified);
  if (n == 4) {
    // x^4 + a x^3 + b x^2 + c x + d; resolvent roots θ1θ2 + θ3θ4.
    const BigInt a = f.c[3], b = f.c[2], c = f.c[1], d = f.c[0];
    IntPoly r(std::vector<BigInt>{-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1});
    auto roots = integer_roots(r);
    if (roots.empty()) return label_of(4, square ? 4 : 5, Confidence::Certified);
    if (roots.size() == 3) return label_of(4, 2, Confidence::Certified);
    const BigInt& s = roots.front();
    bool c4 = square_in_quadratic(s * s - 4 * d, disc) &&
              square_in_quadratic(a * a - 4 * (b - s), disc);
    return label_of(4, c4 ? 1 : 3, Confidence::Certified);
  }
  return sampled_galois_label(f, seed);
}

IntPoly canonical_generator(const IntPoly& f, std::size_t max_vectors) {
  require_monic(f, "canonical_generator");
  if (f.degree() > 6) throw DomainError("canonical_generator: degree above 6");
  if (!is_irreducible(f)) throw DomainError("canonical_generator: polynomial is reducible");
  return canonical_generator(maximal_order(f), max_vectors);
}

IntPoly canonical_generator(const MaximalOrder& order, std::size_t max_vectors) {
  const IntPoly& f = order.f;
  const int n = f.degree();
  if (n == 1) return IntPoly(std::vector<BigInt>{0, 1});
  const auto roots = complex_roots(f);
  const long double den = order.basis.den.get_d();
  std::vector<RVec> b(n, RVec(2 * n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Cx v = 0, pw = 1;
      for (int j = 0; j < n; ++j) {
        v += static_cast<long double>(order.basis.rows[i][j].get_d()) * pw;
        pw *= roots[k];
      }
      v /= den;
      b[i][2 * k] = v.real();
      b[i][2 * k + 1] = v.imag();
    }
  std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  lll(b, u);

  long double bound = 1.5L * n;
  while (true) {
    auto vecs = short_vectors(b, bound, max_vectors);
    if (vecs.size() > max_vectors)
      throw CapacityError("canonical generator search exceeded the box T2 <= " +
                              std::to_string(static_cast<double>(bound)),
                          max_vectors);
    std::sort(vecs.begin(), vecs.end(),
              [](const ShortVector& x, const ShortVector& y) { return x.norm < y.norm; });
    std::optional<long double> best;
    std::optional<IntPoly> best_poly;
    for (const auto& sv : vecs) {
      if (best && sv.norm > *best * (1 + 1e-9L)) break;
      std::vector<BigInt> c(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[j] += BigInt(static_cast<long>(sv.y[i])) * BigInt(static_cast<long>(u[i][j]));
      IntPoly g = charpoly(mult_matrix(order.table, c));
      if (poly_disc(g) == 0) continue;
      if (!best) best = sv.norm;
      if (!best_poly || lex_less(g, *best_poly)) best_poly = g;
    }
    if (best && *best * (1 + 1e-9L) < bound) return *best_poly;
    bound = best ? *best * (1 + 1e-8L) + 1e-9L : bound * 2;
  }
}

IntPoly splitting_sextic(const IntPoly& cubic) {
  require_monic(cubic, "splitting_sextic");
  if (cubic.degree() != 3) throw DomainError("splitting_sextic: cubic required");
  if (!is_irreducible(cubic) || galois_label(cubic).name != "S3")
    throw DomainError("splitting_sextic: cubic must have Galois group S3");
  IntPoly x3(std::vector<BigInt>{0, 0, 0, 1});
  IntPoly g = sextic_from(cubic, -1, 1, x3);
  if (poly_disc(g) != 0 && is_irreducible(g)) return g;
  const auto& a = cubic.c;
  IntPoly scaled(std::vector<BigInt>{27 * a[0], 9 * a[1], 3 * a[2], 1});
  g = sextic_from(cubic, 1, 2, scaled);
  if (poly_disc(g) != 0 && is_irreducible(g)) return g;
  throw InvariantError("splitting_sextic: no primitive element found for " + to_string(cubic));
}

bool brauer_check(const BigInt& absK, const BigInt& absM, const BigInt& absN, long F_order,
                  long H_order) {
  if (F_order < 1 || H_order < 1) throw DomainError("brauer_check: orders must be positive");
  BigInt mF;
  mpz_pow_ui(mF.get_mpz_t(), absM.get_mpz_t(), static_cast<unsigned long>(F_order));
  if (mF == 0 || absN % mF != 0)
    throw DomainError("brauer_check: |d_M|^|F| does not divide |d_N|");
  BigInt lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), absK.get_mpz_t(), static_cast<unsigned long>(H_order));
  mpz_pow_ui(rhs.get_mpz_t(), absM.get_mpz_t(), static_cast<unsigned long>(F_order - 1));
  return lhs == rhs * (absN / mF);
}

bool tower_check(const BigInt& absM, const BigInt& absN, long m, const BigInt& relnorm) {
  if (m < 1) throw DomainError("tower_check: degree must be positive");
  BigInt mm;
  mpz_pow_ui(mm.get_mpz_t(), absM.get_mpz_t(), static_cast<unsigned long>(m));
  return absN == mm * relnorm;
}

NumberFieldRecord make_record_canonical(const IntPoly& canonical, const MaximalOrder& order,
                                        std::uint64_t seed) {
  NumberFieldRecord r;
  r.defining_poly = canonical;
  r.degree = canonical.degree();
  r.field_disc = order.field_disc;
  r.poly_disc = poly_disc(canonical);
  BigInt q = r.poly_disc / r.field_disc;
  mpz_sqrt(r.index.get_mpz_t(), q.get_mpz_t());
  r.galois = r.degree == 1 ? GaloisLabel{1, 1, "C1", Confidence::Certified}
                           : galois_label(canonical, seed);
  r.signature.r1 = real_root_count(canonical);
  r.signature.r2 = (r.degree - r.signature.r1) / 2;
  return r;
}

NumberFieldRecord make_record(const IntPoly& f, std::uint64_t seed) {
  require_monic(f, "make_record");
  if (!is_irreducible(f)) throw DomainError("make_record: polynomial is reducible");
  if (f.degree() > 6) throw DomainError("make_record: degree above 6");
  MaximalOrder mo = maximal_order(f);
  IntPoly g = canonical_generator(mo);
  return make_record_canonical(g, mo, seed);
}

std::string record_csv_header() {
  return "degree,field_disc,galois_label,canonical_poly,signature,confidence";
}

std::string to_csv(const NumberFieldRecord& r) {
  return csv_row({std::to_string(r.degree), r.field_disc.get_str(), r.galois.name,
                  coeff_list(r.defining_poly),
                  "(" + std::to_string(r.signature.r1) + "," + std::to_string(r.signature.r2) + ")",
                  to_string(r.galois.confidence)});
}

std::string to_json(const NumberFieldRecord& r) {
  nlohmann::ordered_json j;
  j["degree"] = r.degree;
  j["field_disc"] = r.field_disc.get_str();
  j["galois_label"] = r.galois.name;
  j["transitive_id"] = r.galois.id();
  j["canonical_poly"] = coeff_list(r.defining_poly);
  j["signature"] = {r.signature.r1, r.signature.r2};
  j["confidence"] = to_string(r.galois.confidence);
  return j.dump();
}

double minkowski_bound(int n, int r2) {
  // (n^n / n!)^2 (π/4)^{2 r2}
  double lg = 2 * (n * std::log(n) - std::lgamma(n + 1.0)) + 2 * r2 * std::log(M_PI / 4);
  return std::exp(lg);
}

}  // namespace malle
