#include "malle/groupstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"
#include "malle/error.hpp"

namespace malle {

namespace {

using Index = std::size_t;
using IndexSet = std::vector<Index>;  // sorted element indices into G

ElementSet to_elements(const PermGroup& G, const IndexSet& s) {
  ElementSet out;
  out.reserve(s.size());
  for (Index i : s) out.push_back(G.element(i));
  return out;  // indices are sorted and elements are sorted, so this is sorted
}

IndexSet to_indices(const PermGroup& G, const ElementSet& U) {
  IndexSet out;
  out.reserve(U.size());
  for (const auto& u : U) {
    auto i = G.index_of(u);
    if (!i) throw DomainError("element " + u.to_cycle_string() + " is not in the group");
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IndexSet closure_indices(const PermGroup& G, const IndexSet& gens) {
  std::vector<char> in(G.order(), 0);
  IndexSet elems{0};
  in[0] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (Index g : gens) {
      Index h = G.product_index(g, elems[head]);
      if (!in[h]) {
        in[h] = 1;
        elems.push_back(h);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Greedy generating set: walk the elements in order, keep those not yet generated.
IndexSet greedy_generators(const PermGroup& G, const IndexSet& U) {
  IndexSet gens;
  std::vector<char> covered(G.order(), 0);
  covered[0] = 1;
  for (Index u : U) {
    if (covered[u]) continue;
    gens.push_back(u);
    for (Index x : closure_indices(G, gens)) covered[x] = 1;
  }
  return gens;
}

std::vector<IndexSet> class_indices(const PermGroup& G) {
  std::vector<char> assigned(G.order(), 0);
  std::vector<IndexSet> classes;
  std::vector<Permutation> gen_inv;
  for (const auto& g : G.generators()) gen_inv.push_back(g.inverse());
  for (Index x = 0; x < G.order(); ++x) {
    if (assigned[x]) continue;
    IndexSet cls{x};
    assigned[x] = 1;
    for (std::size_t head = 0; head < cls.size(); ++head)
      for (std::size_t k = 0; k < gen_inv.size(); ++k) {
        Permutation c = compose(compose(G.generators()[k], G.element(cls[head])), gen_inv[k]);
        Index ci = *G.index_of(c);
        if (!assigned[ci]) {
          assigned[ci] = 1;
          cls.push_back(ci);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool subset_of(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::size_t smallest_prime_divisor(std::size_t n) {
  if (n < 2) return 0;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

std::vector<ElementSet> conjugacy_classes(const PermGroup& G) {
  std::vector<ElementSet> out;
  for (const auto& c : class_indices(G)) out.push_back(to_elements(G, c));
  return out;
}

ElementSet subgroup_generated(const PermGroup& G, const ElementSet& gens) {
  return to_elements(G, closure_indices(G, to_indices(G, gens)));
}

bool is_abelian(const ElementSet& U) {
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (compose(U[i], U[j]) != compose(U[j], U[i])) return false;
  return true;
}

bool is_normal(const PermGroup& G, const ElementSet& U) {
  if (!is_subgroup(G, U)) return false;
  std::set<Permutation> in(U.begin(), U.end());
  for (const auto& g : G.generators()) {
    Permutation gi = g.inverse();
    for (const auto& u : U)
      if (!in.contains(compose(compose(g, u), gi))) return false;
  }
  return true;
}

std::vector<ElementSet> normal_subgroups(const PermGroup& G) {
  auto classes = class_indices(G);
  // Each normal subgroup is a join of normal closures of classes.
  std::vector<IndexSet> found{IndexSet{0}};
  std::vector<IndexSet> found_gens{IndexSet{}};
  std::set<IndexSet> seen{IndexSet{0}};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& cls : classes) {
      if (subset_of(cls, found[head])) continue;
      // Add class members one at a time, skipping those already generated.
      IndexSet gens = found_gens[head];
      IndexSet joined = found[head];
      for (Index x : cls) {
        if (std::binary_search(joined.begin(), joined.end(), x)) continue;
        gens.push_back(x);
        joined = closure_indices(G, gens);
      }
      if (seen.insert(joined).second) {
        found_gens.push_back(std::move(gens));
        found.push_back(std::move(joined));
      }
    }
  }
  std::vector<ElementSet> out;
  for (const auto& s : found) out.push_back(to_elements(G, s));
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<ElementSet> abelian_normal_subgroups(const PermGroup& G) {
  std::vector<ElementSet> out;
  for (auto& N : normal_subgroups(G))
    if (N.size() > 1 && is_abelian(N)) out.push_back(std::move(N));
  return out;
}

std::optional<FrobeniusData> frobenius_classify(const PermGroup& G) {
  if (!G.is_transitive()) throw DomainError("frobenius_classify: group is not transitive");
  const std::size_t n = G.order();
  IndexSet H = G.stabilizer(1);
  std::set<Permutation> Hset;
  for (Index h : H) Hset.insert(G.element(h));

  // Stabilizer-conjugate definition: 1 < H < G and H ∩ H^g = {1} for g ∉ H.
  bool by_conjugates = H.size() > 1 && H.size() < n;
  for (Index g = 0; g < n && by_conjugates; ++g) {
    if (Hset.contains(G.element(g))) continue;
    const Permutation& gp = G.element(g);
    Permutation gi = gp.inverse();
    for (Index h : H) {
      if (h == 0) continue;
      if (Hset.contains(compose(compose(gp, G.element(h)), gi))) {
        by_conjugates = false;
        break;
      }
    }
  }

  // Fixed-point characterization.
  bool some_fixes = false, none_fix_two = true;
  for (Index g = 1; g < n; ++g) {
    std::size_t f = G.element(g).fixed_points();
    if (f >= 1) some_fixes = true;
    if (f >= 2) none_fix_two = false;
  }
  bool by_fixed_points = some_fixes && none_fix_two;

  if (by_conjugates != by_fixed_points)
    throw InvariantError("frobenius_classify: stabilizer and fixed-point characterizations disagree");
  if (!by_conjugates) return std::nullopt;

  FrobeniusData data;
  for (Index g = 0; g < n; ++g)
    if (g == 0 || G.element(g).fixed_points() == 0) data.kernel.push_back(G.element(g));
  if (!is_subgroup(G, data.kernel))
    throw InvariantError("frobenius_classify: fixed-point-free elements do not form a subgroup");
  if (data.kernel.size() != G.degree())
    throw InvariantError("frobenius_classify: kernel order differs from the degree");
  data.complement = to_elements(G, H);
  data.kernel_is_abelian = is_abelian(data.kernel);
  return data;
}

GroupAnalysis notation_parameters(const PermGroup& G, const ElementSet& F) {
  if (F.size() <= 1) throw DomainError("notation_parameters: F must be non-trivial");
  if (!is_normal(G, F)) throw DomainError("notation_parameters: F is not a normal subgroup");
  if (!is_abelian(F)) throw DomainError("notation_parameters: F is not abelian");
  GroupAnalysis a;
  a.group = std::make_shared<const PermGroup>(G);
  a.abelian_normal_subgroups = abelian_normal_subgroups(G);
  a.kernel = F;
  std::sort(a.kernel.begin(), a.kernel.end());
  a.m = F.size();
  a.t = G.order() / F.size();
  a.p = smallest_prime_divisor(a.m);
  a.p1 = smallest_prime_divisor(a.t);
  a.in_F1 = G.is_transitive();
  if (a.in_F1) {
    a.frobenius = frobenius_classify(G);
    a.in_F = a.frobenius && a.frobenius->kernel == a.kernel;
  }
  a.quotient = std::make_shared<const PermGroup>(coset_action(G, a.kernel));
  return a;
}

GroupAnalysis analyze_group(const PermGroup& G) {
  if (G.is_transitive()) {
    auto frob = frobenius_classify(G);
    if (frob && frob->kernel_is_abelian) return notation_parameters(G, frob->kernel);
  }
  auto ab = abelian_normal_subgroups(G);
  if (ab.empty()) throw DomainError("group has no non-trivial abelian normal subgroup");
  return notation_parameters(G, ab.back());
}

namespace {

std::size_t element_order(const PermGroup& G, Index x) { return G.element(x).order(); }

// Invariant factors of an abelian group from its element orders.
std::vector<std::size_t> abelian_invariants(const PermGroup& G) {
  const std::size_t n = G.order();
  std::map<std::size_t, std::vector<std::size_t>> prime_parts;  // prime -> exponents of cyclic factors
  std::size_t r = n;
  for (std::size_t q = 2; q <= r; ++q) {
    if (r % q) continue;
    std::size_t e = 0;
    while (r % q == 0) {
      r /= q;
      ++e;
    }
    // c[k] = #elements with order dividing q^k
    std::vector<std::size_t> c(e + 2, 0);
    for (Index x = 0; x < n; ++x) {
      std::size_t o = element_order(G, x), k = 0;
      while (o % q == 0) {
        o /= q;
        ++k;
      }
      if (o != 1) continue;
      for (std::size_t j = k; j <= e + 1; ++j) ++c[j];
    }
    // log_q(c[k]/c[k-1]) = number of cyclic factors of exponent >= k.
    std::vector<std::size_t> at_least(e + 2, 0);
    for (std::size_t k = 1; k <= e + 1; ++k) {
      std::size_t ratio = c[k] / c[k - 1], l = 0;
      while (ratio > 1) {
        ratio /= q;
        ++l;
      }
      at_least[k] = l;
    }
    std::vector<std::size_t> exps;
    for (std::size_t k = 1; k <= e; ++k)
      for (std::size_t j = 0; j < at_least[k] - at_least[k + 1]; ++j) exps.push_back(k);
    std::sort(exps.rbegin(), exps.rend());
    prime_parts[q] = exps;
  }
  std::size_t rank = 0;
  for (auto& [q, ex] : prime_parts) rank = std::max(rank, ex.size());
  std::vector<std::size_t> inv(rank, 1);  // largest first
  for (auto& [q, ex] : prime_parts)
    for (std::size_t i = 0; i < ex.size(); ++i)
      for (std::size_t k = 0; k < ex[i]; ++k) inv[i] *= q;
  std::reverse(inv.begin(), inv.end());
  return inv;
}

IndexSet cyclic_subgroup(const PermGroup& G, Index x) {
  IndexSet s{0};
  Index y = x;
  while (y != 0) {
    s.push_back(y);
    y = G.product_index(x, y);
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

std::string structure_label(const PermGroup& G) {
  const std::size_t n = G.order();
  if (n == 1) return "C_1";
  if (G.is_abelian()) {
    auto inv = abelian_invariants(G);
    std::string out;
    for (std::size_t i = 0; i < inv.size(); ++i) out += (i ? "xC_" : "C_") + std::to_string(inv[i]);
    return out;
  }
  std::vector<std::size_t> orders(n);
  for (Index x = 0; x < n; ++x) orders[x] = element_order(G, x);
  auto has_order = [&](std::size_t o) { return std::find(orders.begin(), orders.end(), o) != orders.end(); };

  if (n % 2 == 0 && n / 2 >= 3) {
    for (Index r = 0; r < n; ++r) {
      if (orders[r] != n / 2) continue;
      IndexSet R = cyclic_subgroup(G, r);
      Index rinv = G.inverse_index(r);
      for (Index s = 0; s < n; ++s)
        if (orders[s] == 2 && !std::binary_search(R.begin(), R.end(), s) &&
            G.product_index(G.product_index(s, r), s) == rinv)
          return "D_" + std::to_string(n / 2);
      break;
    }
  }
  if (n == 12 && !has_order(6) && !has_order(4)) return "A_4";
  if (n == 24 && has_order(4) && has_order(3) && !has_order(6) && !has_order(8) && !has_order(12))
    return "S_4";
  if (n == 60 && !has_order(4) && !has_order(6) && has_order(5)) return "A_5";

  // Cyclic normal subgroup with cyclic quotient, largest first.
  std::size_t best_a = 0, best_b = 0;
  std::set<IndexSet> tried;
  for (Index x = 1; x < n; ++x) {
    IndexSet N = cyclic_subgroup(G, x);
    if (N.size() <= best_a || !tried.insert(N).second) continue;
    if (!is_normal(G, to_elements(G, N))) continue;
    std::size_t b = n / N.size();
    for (Index g = 0; g < n; ++g) {
      std::size_t k = 1;
      Index y = g;
      while (!std::binary_search(N.begin(), N.end(), y)) {
        y = G.product_index(g, y);
        ++k;
      }
      if (k == b) {
        best_a = N.size();
        best_b = b;
        break;
      }
    }
  }
  if (best_a > 0) return "C_" + std::to_string(best_a) + ":C_" + std::to_string(best_b);
  return "G_" + std::to_string(n);
}

std::vector<std::string> generator_cycles(const PermGroup& G, const ElementSet& U) {
  std::vector<std::string> out;
  for (Index i : greedy_generators(G, to_indices(G, U))) out.push_back(G.element(i).to_cycle_string());
  return out;
}

std::string analysis_json(const GroupAnalysis& a) {
  nlohmann::ordered_json j;
  j["group"] = a.group->name();
  j["order"] = a.group->order();
  j["degree"] = a.group->degree();
  j["m"] = a.m;
  j["t"] = a.t;
  j["p"] = a.p;
  j["p1"] = a.p1;
  j["frobenius"] = a.in_F;
  j["in_F1"] = a.in_F1;
  j["kernel_generators"] = generator_cycles(*a.group, a.kernel);
  j["quotient_label"] = structure_label(*a.quotient);
  return j.dump(2);
}

}  // namespace malle
