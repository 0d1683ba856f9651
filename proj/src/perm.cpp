#include "malle/perm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "malle/error.hpp"

namespace malle {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree == 0) throw DomainError("permutation degree must be at least 1");
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::span<const Point> one_based_images) {
  const std::size_t d = one_based_images.size();
  if (d == 0) throw DomainError("permutation degree must be at least 1");
  std::vector<Point> imgs(d);
  std::vector<bool> seen(d, false);
  for (std::size_t i = 0; i < d; ++i) {
    Point y = one_based_images[i];
    if (y < 1 || y > d || seen[y - 1])
      throw DomainError("image sequence is not a bijection on {1.." + std::to_string(d) + "}");
    seen[y - 1] = true;
    imgs[i] = y - 1;
  }
  return Permutation(std::move(imgs));
}

Permutation Permutation::from_cycles(const std::vector<std::vector<Point>>& cycles,
                                     std::size_t degree) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (Point x : cyc) {
      if (x < 1 || x > degree)
        throw DomainError("cycle point " + std::to_string(x) + " outside 1.." +
                          std::to_string(degree));
      if (used[x - 1]) throw DomainError("point " + std::to_string(x) + " repeated in cycles");
      used[x - 1] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i)
      p.images_[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
  }
  return p;
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, int(i) + 1); };
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == text.size()) fail("empty cycle notation");
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<Point> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || text[i] < '0' || text[i] > '9') fail("expected point or ')'");
      unsigned long v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
      cyc.push_back(static_cast<Point>(v));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
  }
  return from_cycles(cycles, degree);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

std::size_t Permutation::order() const {
  std::size_t o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, len);
  return o;
}

std::size_t Permutation::fixed_points() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) n += images_[i] == i;
  return n;
}

bool Permutation::is_even() const {
  std::size_t transpositions = 0;
  for (std::size_t len : cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

std::vector<std::vector<Permutation::Point>> Permutation::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb;
    for (std::size_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      orb.push_back(static_cast<Point>(x + 1));
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::size_t Permutation::orbit_count() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t n = 0;
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    ++n;
    for (std::size_t x = s; !seen[x]; x = images_[x]) seen[x] = true;
  }
  return n;
}

CycleType Permutation::cycle_type() const {
  CycleType ct;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    ct.push_back(len);
  }
  std::sort(ct.rbegin(), ct.rend());
  return ct;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s] || images_[s] == s) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) os << ' ';
      os << x + 1;
      first = false;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw DomainError("cannot compose permutations of degree " + std::to_string(a.degree()) +
                      " and " + std::to_string(b.degree()));
  std::vector<Permutation::Point> out(a.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
  return Permutation(std::move(out));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.raw()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

PermGroup PermGroup::closure(std::vector<Permutation> generators, std::size_t degree,
                             std::size_t cap, std::string name) {
  if (degree == 0) throw DomainError("group degree must be at least 1");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw DomainError("generator of degree " + std::to_string(g.degree()) +
                        " in a group of degree " + std::to_string(degree));
  PermGroup G;
  G.degree_ = degree;
  G.name_ = std::move(name);
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::erase_if(generators, [](const Permutation& g) { return g.is_identity(); });
  G.generators_ = generators;

  std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
  std::vector<Permutation> elems;
  elems.emplace_back(degree);
  seen.emplace(elems.back(), 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      Permutation h = compose(g, elems[head]);
      if (seen.contains(h)) continue;
      if (elems.size() >= cap) throw CapacityError("group closure exceeds element cap", cap);
      seen.emplace(h, elems.size());
      elems.push_back(std::move(h));
    }
  }
  std::sort(elems.begin(), elems.end());
  G.elements_ = std::move(elems);
  G.index_.reserve(G.elements_.size());
  for (std::size_t i = 0; i < G.elements_.size(); ++i) G.index_.emplace(G.elements_[i], i);
  return G;
}

PermGroup PermGroup::with_name(std::string name) const {
  PermGroup copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& g) const {
  if (g.degree() != degree_) return std::nullopt;
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PermGroup::product_index(std::size_t i, std::size_t j) const {
  return index_.at(compose(elements_[i], elements_[j]));
}

std::size_t PermGroup::inverse_index(std::size_t i) const {
  return index_.at(elements_[i].inverse());
}

std::vector<Permutation::Point> PermGroup::orbit_of(Permutation::Point x) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Permutation::Point> orb{x};
  seen[x - 1] = true;
  for (std::size_t head = 0; head < orb.size(); ++head)
    for (const auto& g : generators_) {
      auto y = g(orb[head]);
      if (!seen[y - 1]) {
        seen[y - 1] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

bool PermGroup::is_transitive() const { return orbit_of(1).size() == degree_; }

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (compose(generators_[i], generators_[j]) != compose(generators_[j], generators_[i]))
        return false;
  return true;
}

std::vector<std::size_t> PermGroup::stabilizer(Permutation::Point x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i](x) == x) out.push_back(i);
  return out;
}

PermGroup group_closure(const std::vector<Permutation>& generators, std::size_t cap) {
  if (generators.empty()) throw DomainError("group_closure needs at least one generator");
  return PermGroup::closure(generators, generators.front().degree(), cap);
}

bool is_subgroup(const PermGroup& G, const ElementSet& U) {
  if (U.empty()) return false;
  std::unordered_map<Permutation, bool, PermutationHash> in;
  for (const auto& u : U) {
    if (!G.contains(u)) return false;
    in.emplace(u, true);
  }
  if (!in.contains(Permutation(G.degree()))) return false;
  for (const auto& a : U)
    for (const auto& b : U)
      if (!in.contains(compose(a, b))) return false;
  return true;
}

PermGroup coset_action(const PermGroup& G, const ElementSet& U) {
  if (!is_subgroup(G, U)) throw DomainError("coset_action: U is not a subgroup of G");
  if (G.order() % U.size() != 0) throw InvariantError("subgroup order does not divide |G|");
  const std::size_t n = G.order();
  // coset_of[i] = coset number of element i; cosets numbered by their smallest element.
  std::vector<std::size_t> coset_of(n, SIZE_MAX);
  std::size_t cosets = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (coset_of[i] != SIZE_MAX) continue;
    for (const auto& u : U) coset_of[*G.index_of(compose(G.element(i), u))] = cosets;
    ++cosets;
  }
  std::vector<std::size_t> rep(cosets);
  for (std::size_t i = n; i-- > 0;) rep[coset_of[i]] = i;

  auto act = [&](const Permutation& g) {
    std::vector<Permutation::Point> imgs(cosets);
    for (std::size_t c = 0; c < cosets; ++c)
      imgs[c] = static_cast<Permutation::Point>(
          coset_of[*G.index_of(compose(g, G.element(rep[c])))] + 1);
    return Permutation::from_images(imgs);
  };
  std::vector<Permutation> gens;
  for (const auto& g : G.generators()) gens.push_back(act(g));
  return PermGroup::closure(std::move(gens), cosets, std::max<std::size_t>(kDefaultGroupCap, n));
}

PermGroup regular_action(const PermGroup& G) {
  return coset_action(G, ElementSet{G.element(0)});
}

}  // namespace malle
