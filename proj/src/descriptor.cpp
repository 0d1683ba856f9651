#include "malle/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "malle/error.hpp"

namespace malle {

long multiplicative_order(long v, long m) {
  if (m <= 0) return 0;
  v %= m;
  if (v < 0) v += m;
  if (std::gcd(v, m) != 1) return 0;
  if (m == 1) return 1;
  long x = v, k = 1;
  while (x != 1) {
    x = static_cast<long>((static_cast<__int128>(x) * v) % m);
    ++k;
  }
  return k;
}

namespace {

using Kind = GroupDescriptor::Kind;
using Action = GroupDescriptor::Action;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  GroupDescriptor parse_all() {
    GroupDescriptor d = descriptor();
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("descriptor: " + msg, 1, static_cast<int>(pos_) + 1);
  }
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string ident() {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  long number() {
    ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    long v = 0;
    std::size_t digits = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      ++digits;
      if (v > 1000000000L) fail("number too large");
    }
    if (digits == 0) {
      pos_ = start;
      fail("expected number");
    }
    return neg ? -v : v;
  }
  void keyword(std::string_view kw) {
    std::string id = ident();
    if (id != kw) fail("expected '" + std::string(kw) + "'");
  }
  // A run of cycles such as (1 2)(3 4); returns the raw text.
  std::string cycle_group() {
    ws();
    std::size_t start = pos_;
    if (!peek('(')) fail("expected cycle notation");
    while (pos_ < s_.size() && s_[pos_] == '(') {
      std::size_t close = s_.find(')', pos_);
      if (close == std::string_view::npos) fail("unterminated cycle");
      pos_ = close + 1;
      std::size_t save = pos_;
      ws();
      if (pos_ >= s_.size() || s_[pos_] != '(') pos_ = save;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  GroupDescriptor descriptor() {
    GroupDescriptor d = term();
    if (peek('@')) {
      ++pos_;
      std::string act = ident();
      if (act == "natural")
        d.action = Action::Natural;
      else if (act == "regular")
        d.action = Action::Regular;
      else
        fail("unknown action '" + act + "'");
    }
    return d;
  }

  GroupDescriptor term() {
    ws();
    std::size_t id_start = pos_;
    std::string id = ident();
    GroupDescriptor d;
    if (id.size() >= 2 && std::string("CDSA").find(id[0]) != std::string::npos &&
        std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(c); })) {
      long n = std::stol(id.substr(1));
      d.kind = id[0] == 'C'   ? Kind::Cyclic
               : id[0] == 'D' ? Kind::Dihedral
               : id[0] == 'S' ? Kind::Symmetric
                              : Kind::Alternating;
      d.params = {n};
      return d;
    }
    expect('(');
    if (id == "cyclic" || id == "dihedral" || id == "symmetric" || id == "alternating") {
      d.kind = id == "cyclic"      ? Kind::Cyclic
               : id == "dihedral"  ? Kind::Dihedral
               : id == "symmetric" ? Kind::Symmetric
                                   : Kind::Alternating;
      d.params = {number()};
    } else if (id == "semidirect") {
      d.kind = Kind::Semidirect;
      long m = number();
      expect(',');
      long t = number();
      expect(';');
      keyword("v");
      expect('=');
      long v = number();
      d.params = {m, t, v};
    } else if (id == "affine_gf") {
      d.kind = Kind::AffineGF;
      long q = number();
      long mult = 0, frob = 1;
      while (peek(',')) {
        ++pos_;
        std::string key = ident();
        if (key == "gen") {
          mult = 0;
        } else if (key == "mult" || key == "frob") {
          expect('=');
          (key == "mult" ? mult : frob) = number();
        } else {
          fail("unknown affine_gf option '" + key + "'");
        }
      }
      d.params = {q, mult == 0 ? q - 1 : mult, frob};
    } else if (id == "direct_product") {
      d.kind = Kind::DirectProduct;
      d.children.push_back(descriptor());
      expect(',');
      d.children.push_back(descriptor());
    } else if (id == "coset") {
      d.kind = Kind::Coset;
      d.children.push_back(descriptor());
      expect(',');
      expect('[');
      d.cycles.push_back(cycle_group());
      while (peek(',')) {
        ++pos_;
        d.cycles.push_back(cycle_group());
      }
      expect(']');
    } else if (id == "gens") {
      d.kind = Kind::Generators;
      d.params = {number()};
      expect(';');
      d.cycles.push_back(cycle_group());
      while (peek(',')) {
        ++pos_;
        d.cycles.push_back(cycle_group());
      }
    } else {
      pos_ = id_start;
      fail("unknown group family '" + id + "'");
    }
    expect(')');
    return d;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string canonical_cycles(const std::string& text, std::size_t degree) {
  return Permutation::parse_cycles(text, degree).to_cycle_string();
}

GroupDescriptor canonicalize(GroupDescriptor d) {
  for (auto& c : d.children) c = canonicalize(c);
  if (d.kind == Kind::Coset) {
    std::size_t deg = build_group(d.children[0]).degree();
    for (auto& c : d.cycles) c = canonical_cycles(c, deg);
  } else if (d.kind == Kind::Generators) {
    for (auto& c : d.cycles) c = canonical_cycles(c, static_cast<std::size_t>(d.params[0]));
  }
  return d;
}

// ---- finite fields GF(p^e) for affine groups --------------------------------

struct FiniteField {
  long p = 0, e = 0, q = 0;
  std::vector<long> modulus;  // monic, degree e, coefficients low to high

  std::vector<long> digits(long x) const {
    std::vector<long> v(e);
    for (long i = 0; i < e; ++i) {
      v[i] = x % p;
      x /= p;
    }
    return v;
  }
  long encode(const std::vector<long>& v) const {
    long x = 0;
    for (long i = e; i-- > 0;) x = x * p + v[i];
    return x;
  }
  long add(long a, long b) const {
    auto u = digits(a), v = digits(b);
    for (long i = 0; i < e; ++i) u[i] = (u[i] + v[i]) % p;
    return encode(u);
  }
  long mul(long a, long b) const {
    auto u = digits(a), v = digits(b);
    std::vector<long> prod(2 * e, 0);
    for (long i = 0; i < e; ++i)
      for (long j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + u[i] * v[j]) % p;
    for (long k = 2 * e - 1; k >= e; --k) {
      long c = prod[k];
      if (c == 0) continue;
      for (long i = 0; i <= e; ++i)
        prod[k - e + i] = ((prod[k - e + i] - c * modulus[i]) % p + p) % p;
    }
    prod.resize(e);
    return encode(prod);
  }
  long pow(long a, long k) const {
    long r = 1, b = a;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }
  long order(long a) const {
    long x = a, k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
      if (k > q) return 0;
    }
    return k;
  }
};

bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FiniteField make_field(long q) {
  if (q < 2 || q > 1 << 16) throw DomainError("affine_gf: field size must be in [2, 65536]");
  long p = 2;
  while (q % p != 0) ++p;
  if (!is_prime_small(p)) throw DomainError("affine_gf: bad field size");
  long e = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw DomainError("affine_gf: q = " + std::to_string(q) + " is not a prime power");
  FiniteField F{p, e, q, {}};
  if (e == 1) {
    F.modulus = {0, 1};
    return F;
  }
  // First monic irreducible of degree e in lexicographic order.
  long total = 1;
  for (long i = 0; i < e; ++i) total *= p;
  for (long code = 0; code < total; ++code) {
    std::vector<long> mod(e + 1);
    long c = code;
    for (long i = 0; i < e; ++i) {
      mod[i] = c % p;
      c /= p;
    }
    mod[e] = 1;
    F.modulus = mod;
    // Irreducible iff the quotient ring has no zero divisors.
    bool field = true;
    for (long a = 1; a < q && field; ++a)
      for (long b = a; b < q && field; ++b)
        if (F.mul(a, b) == 0) field = false;
    if (field) return F;
  }
  throw InvariantError("affine_gf: no irreducible polynomial found");
}

PermGroup build_affine(long q, long mult, long frob, std::size_t cap) {
  FiniteField F = make_field(q);
  if (mult < 1 || (q - 1) % mult != 0)
    throw DomainError("affine_gf: multiplier order " + std::to_string(mult) +
                      " does not divide q-1 = " + std::to_string(q - 1));
  if (frob < 1 || F.e % frob != 0)
    throw DomainError("affine_gf: Frobenius order " + std::to_string(frob) +
                      " does not divide the degree " + std::to_string(F.e));
  long g = 0;
  for (long a = 1; a < q; ++a)
    if (F.order(a) == q - 1) {
      g = a;
      break;
    }
  if (q == 2) g = 1;
  const long h = F.pow(g, (q - 1) / mult);
  auto perm_of = [&](auto map) {
    std::vector<Permutation::Point> imgs(static_cast<std::size_t>(q));
    for (long x = 0; x < q; ++x) imgs[x] = static_cast<Permutation::Point>(map(x) + 1);
    return Permutation::from_images(imgs);
  };
  std::vector<Permutation> gens;
  long unit = 1;
  for (long i = 0; i < F.e; ++i) {
    gens.push_back(perm_of([&](long x) { return F.add(x, unit); }));
    unit *= F.p;
  }
  gens.push_back(perm_of([&](long x) { return F.mul(h, x); }));
  if (frob > 1) {
    long step = 1;
    for (long i = 0; i < F.e / frob; ++i) step *= F.p;
    gens.push_back(perm_of([&](long x) { return F.pow(x, step); }));
  }
  return PermGroup::closure(std::move(gens), static_cast<std::size_t>(q), cap);
}

PermGroup build_natural(const GroupDescriptor& d, std::size_t cap) {
  using P = Permutation::Point;
  switch (d.kind) {
    case Kind::Cyclic: {
      long n = d.params[0];
      if (n < 1) throw DomainError("cyclic(n) needs n >= 1");
      std::vector<P> cyc(n);
      std::iota(cyc.begin(), cyc.end(), P{1});
      return PermGroup::closure({Permutation::from_cycles({cyc}, n)}, n, cap);
    }
    case Kind::Dihedral: {
      long m = d.params[0];
      if (m < 3) throw DomainError("dihedral(m) needs m >= 3 for a faithful natural action");
      std::vector<P> rot(m);
      std::iota(rot.begin(), rot.end(), P{1});
      std::vector<P> refl(m);
      // i -> 2 - i (mod m) on points 1..m: fixes 1, swaps 2 <-> m, 3 <-> m-1, ...
      for (long i = 1; i <= m; ++i) refl[i - 1] = static_cast<P>(((2 - i) % m + m - 1) % m + 1);
      return PermGroup::closure(
          {Permutation::from_cycles({rot}, m), Permutation::from_images(refl)}, m, cap);
    }
    case Kind::Semidirect: {
      long m = d.params[0], t = d.params[1], v = d.params[2];
      if (m < 2 || t < 1) throw DomainError("semidirect(m,t;v) needs m >= 2 and t >= 1");
      if (multiplicative_order(v, m) != t)
        throw DomainError("semidirect: v = " + std::to_string(v) + " does not have order " +
                          std::to_string(t) + " modulo " + std::to_string(m));
      std::vector<P> sigma(m), psi(m);
      long vv = ((v % m) + m) % m;
      for (long x = 0; x < m; ++x) {
        sigma[x] = static_cast<P>((x + 1) % m + 1);
        psi[x] = static_cast<P>((vv * x) % m + 1);
      }
      return PermGroup::closure(
          {Permutation::from_images(sigma), Permutation::from_images(psi)}, m, cap);
    }
    case Kind::AffineGF:
      return build_affine(d.params[0], d.params[1], d.params[2], cap);
    case Kind::Symmetric: {
      long n = d.params[0];
      if (n < 1) throw DomainError("symmetric(n) needs n >= 1");
      if (n == 1) return PermGroup::closure({}, 1, cap);
      std::vector<P> cyc(n);
      std::iota(cyc.begin(), cyc.end(), P{1});
      return PermGroup::closure(
          {Permutation::from_cycles({{1, 2}}, n), Permutation::from_cycles({cyc}, n)}, n, cap);
    }
    case Kind::Alternating: {
      long n = d.params[0];
      if (n < 1) throw DomainError("alternating(n) needs n >= 1");
      std::vector<Permutation> gens;
      for (long k = 3; k <= n; ++k)
        gens.push_back(Permutation::from_cycles({{1, 2, static_cast<P>(k)}}, n));
      return PermGroup::closure(std::move(gens), n, cap);
    }
    case Kind::DirectProduct: {
      PermGroup A = build_group(d.children[0], cap), B = build_group(d.children[1], cap);
      const std::size_t da = A.degree(), db = B.degree(), n = da * db;
      std::vector<Permutation> gens;
      for (const auto& g : A.generators()) {
        std::vector<P> imgs(n);
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j) imgs[i * db + j] = static_cast<P>(g.image0(i) * db + j + 1);
        gens.push_back(Permutation::from_images(imgs));
      }
      for (const auto& h : B.generators()) {
        std::vector<P> imgs(n);
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j) imgs[i * db + j] = static_cast<P>(i * db + h.image0(j) + 1);
        gens.push_back(Permutation::from_images(imgs));
      }
      return PermGroup::closure(std::move(gens), n, cap);
    }
    case Kind::Coset: {
      PermGroup G = build_group(d.children[0], cap);
      std::vector<Permutation> ugens;
      for (const auto& c : d.cycles) {
        Permutation u = Permutation::parse_cycles(c, G.degree());
        if (!G.contains(u)) throw DomainError("coset: generator " + c + " is not in the group");
        ugens.push_back(u);
      }
      PermGroup U = PermGroup::closure(ugens, G.degree(), cap);
      PermGroup A = coset_action(G, U.elements());
      if (A.order() != G.order())
        throw DomainError("coset: the action on cosets is not faithful (kernel of order " +
                          std::to_string(G.order() / A.order()) + ")");
      return A;
    }
    case Kind::Generators: {
      long deg = d.params[0];
      if (deg < 1) throw DomainError("gens(d; ...) needs d >= 1");
      std::vector<Permutation> gens;
      for (const auto& c : d.cycles) gens.push_back(Permutation::parse_cycles(c, deg));
      return PermGroup::closure(std::move(gens), deg, cap);
    }
  }
  throw InvariantError("unknown descriptor kind");
}

std::string join_cycles(const std::vector<std::string>& cycles) {
  std::string out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (i) out += ", ";
    out += cycles[i];
  }
  return out;
}

}  // namespace

GroupDescriptor parse_descriptor(std::string_view text) {
  return canonicalize(Parser(text).parse_all());
}

std::string to_string(const GroupDescriptor& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Kind::Cyclic: os << "cyclic(" << d.params[0] << ")"; break;
    case Kind::Dihedral: os << "dihedral(" << d.params[0] << ")"; break;
    case Kind::Symmetric: os << "symmetric(" << d.params[0] << ")"; break;
    case Kind::Alternating: os << "alternating(" << d.params[0] << ")"; break;
    case Kind::Semidirect:
      os << "semidirect(" << d.params[0] << "," << d.params[1] << ";v=" << d.params[2] << ")";
      break;
    case Kind::AffineGF:
      os << "affine_gf(" << d.params[0];
      if (d.params[1] != d.params[0] - 1) os << ",mult=" << d.params[1];
      if (d.params[2] != 1) os << ",frob=" << d.params[2];
      os << ")";
      break;
    case Kind::DirectProduct:
      os << "direct_product(" << to_string(d.children[0]) << ", " << to_string(d.children[1])
         << ")";
      break;
    case Kind::Coset:
      os << "coset(" << to_string(d.children[0]) << ", [" << join_cycles(d.cycles) << "])";
      break;
    case Kind::Generators:
      os << "gens(" << d.params[0] << "; " << join_cycles(d.cycles) << ")";
      break;
  }
  if (d.action == Action::Regular) os << "@regular";
  return os.str();
}

PermGroup build_group(const GroupDescriptor& d, std::size_t cap) {
  PermGroup natural = build_natural(d, cap);
  if (d.action == Action::Regular) return regular_action(natural);
  return natural;
}

PermGroup named_group(std::string_view descriptor, std::size_t cap) {
  GroupDescriptor d = parse_descriptor(descriptor);
  return build_group(d, cap).with_name(to_string(d));
}

}  // namespace malle
