#include <gtest/gtest.h>

#include <cstdio>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <set>

#include "malle/census.hpp"
#include "malle/error.hpp"
#include "malle/factor.hpp"
#include "malle/modp.hpp"
#include "malle/order.hpp"
#include "malle/quadclass.hpp"

using namespace malle;

namespace {

CensusCatalog cubic(long long X, std::vector<std::string> labels = {}, unsigned workers = 1) {
  CensusParams p;
  p.degree = 3;
  p.max_disc = X;
  p.labels = std::move(labels);
  CensusOptions o;
  o.workers = workers;
  return enumerate_fields(p, o);
}

// Cyclic cubic fields by conductor: f = 9^e · p_1 ⋯ p_k with p_i ≡ 1 mod 3,
// 2^{(#prime factors) - 1} fields of discriminant f².
long long cyclic_cubic_count(long long X) {
  long long total = 0;
  for (long long f = 7; f * f <= X; ++f) {
    long long g = f;
    int k = 0;
    bool ok = true;
    if (g % 9 == 0) {
      g /= 9;
      ++k;
      if (g % 3 == 0) ok = false;
    } else if (g % 3 == 0) {
      ok = false;
    }
    for (long long p = 2; ok && p * p <= g; ++p) {
      if (g % p) continue;
      g /= p;
      if (g % p == 0 || p % 3 != 1) ok = false;
      ++k;
    }
    if (ok && g > 1) {
      if (g % 3 != 1) ok = false;
      ++k;
    }
    if (ok && k > 0) total += 1LL << (k - 1);
  }
  return total;
}

std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < n; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

bool arithmetically_equivalent(const IntPoly& f, const IntPoly& g) {
  const BigInt df = poly_disc(f), dg = poly_disc(g);
  for (auto p : small_primes(2000)) {
    BigInt bp = static_cast<unsigned long>(p);
    if (df % bp == 0 || dg % bp == 0) continue;
    if (factor_degrees(reduce(f, p)) != factor_degrees(reduce(g, p))) return false;
  }
  return true;
}

}  // namespace

TEST(Census, QuadraticSmall) {
  EXPECT_EQ(enumerate_quadratic(10).records.size(), 6u);
  auto c3 = enumerate_quadratic(3);
  ASSERT_EQ(c3.records.size(), 1u);
  EXPECT_EQ(c3.records[0].field_disc, -3);
  auto c4 = enumerate_quadratic(4);
  ASSERT_EQ(c4.records.size(), 2u);
  EXPECT_EQ(c4.records[1].field_disc, -4);
  std::set<long> discs;
  for (const auto& r : enumerate_quadratic(10).records) discs.insert(r.field_disc.get_si());
  EXPECT_EQ(discs, (std::set<long>{5, 8, -3, -4, -7, -8}));
}

TEST(Census, QuadraticCanonicalMatchesGenerator) {
  for (const auto& r : enumerate_quadratic(300).records) {
    EXPECT_EQ(canonical_generator(r.defining_poly), r.defining_poly) << r.field_disc;
    EXPECT_EQ(maximal_order(r.defining_poly).field_disc, r.field_disc);
  }
}

TEST(Census, CubicSmallCounts) {
  auto s3 = cubic(23, {"S3"});
  ASSERT_EQ(s3.records.size(), 1u);
  EXPECT_EQ(s3.records[0].field_disc, -23);
  EXPECT_EQ(cubic(48, {"C3"}).records.size(), 0u);
  auto c3 = cubic(81, {"C3"});
  ASSERT_EQ(c3.records.size(), 2u);
  EXPECT_EQ(c3.records[0].field_disc, 49);
  EXPECT_EQ(c3.records[1].field_disc, 81);
}

TEST(Census, CyclicCubicsAgainstConductorOracle) {
  for (long long X : {1000LL, 20000LL, 200000LL})
    EXPECT_EQ(static_cast<long long>(cubic(X, {"C3"}).records.size()), cyclic_cubic_count(X)) << X;
}

TEST(Census, CyclicQuartics) {
  CensusParams p;
  p.degree = 4;
  p.max_disc = 200;
  p.labels = {"C4"};
  auto c = enumerate_fields(p);
  ASSERT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.records[0].field_disc, 125);
}

TEST(Census, HunterBoxMatchesNaiveBox) {
  const long X = 500;
  std::set<std::string> naive;
  for (long a = -2; a <= 2; ++a)
    for (long b = -20; b <= 20; ++b)
      for (long c = -30; c <= 30; ++c) {
        IntPoly f(std::vector<BigInt>{c, b, a, 1});
        BigInt D = poly_disc(f);
        if (D == 0 || c == 0) continue;
        BigInt sq = 1;
        for (const auto& [q, e] : factorize(D))
          for (unsigned i = 0; i < e / 2; ++i) sq *= q * q;
        if (abs(D) / sq > X) continue;
        if (!is_irreducible(f)) continue;
        auto mo = maximal_order(f);
        if (abs(mo.field_disc) > X) continue;
        naive.insert(coeff_list(canonical_generator(mo)));
      }
  std::set<std::string> hunter;
  for (const auto& r : cubic(X).records) hunter.insert(coeff_list(r.defining_poly));
  EXPECT_EQ(hunter, naive);
  EXPECT_EQ(hunter.size(), 70u);
}

// The power-sum pruning must not lose primitive fields: compare with the plain
// coefficient box |a_(n-k)| <= C(n,k)(T2/n)^(k/2).
std::set<std::string> outer_box_fields(int n, long X) {
  std::set<std::string> out;
  const BigInt Xb(X);
  for (long a1 = 0; a1 <= n / 2; ++a1) {
    const double B = hunter_bound(n, a1, X);
    std::vector<long> bound;
    for (int k = 2; k <= n; ++k) {
      double c = 1;
      for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
      bound.push_back(static_cast<long>(std::floor(c * std::pow(B / n, k / 2.0) + 1e-9)));
    }
    std::vector<long> a(n + 1, 0);
    a[n] = 1;
    a[n - 1] = a1;
    std::function<void(int)> rec = [&](int k) {
      if (k > n) {
        if (a[0] == 0) return;
        if (std::fabs(static_cast<double>(a1 * a1 - 2 * a[n - 2])) > B + 1e-9) return;
        std::vector<BigInt> c(a.begin(), a.end());
        IntPoly f(c);
        if (poly_disc(f) == 0 || !is_irreducible(f)) return;
        auto mo = maximal_order(f);
        if (abs(mo.field_disc) > Xb) return;
        out.insert(coeff_list(canonical_generator(mo)));
        return;
      }
      for (long v = -bound[k - 2]; v <= bound[k - 2]; ++v) {
        a[n - k] = v;
        rec(k + 1);
      }
    };
    rec(2);
  }
  return out;
}

TEST(Census, PowerSumPruningLosesNothing) {
  for (auto [n, X] : {std::pair<int, long>{4, 800}, std::pair<int, long>{5, 1700}}) {
    CensusParams p;
    p.degree = n;
    p.max_disc = X;
    std::set<std::string> pruned;
    for (const auto& r : enumerate_fields(p).records) pruned.insert(coeff_list(r.defining_poly));
    const auto outer = outer_box_fields(n, X);
    for (const auto& f : pruned) EXPECT_TRUE(outer.count(f)) << f;
    // Hunter's bound covers primitive fields only; in degree 4 those are A4 and S4.
    for (const auto& f : outer) {
      if (pruned.count(f)) continue;
      const auto name = make_record(parse_poly(f)).galois.name;
      EXPECT_TRUE(n == 4 && name != "A4" && name != "S4") << f << " " << name;
    }
  }
}

TEST(Census, CatalogInvariants) {
  auto c = cubic(3000);
  std::set<std::string> polys;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    const auto& r = c.records[i];
    EXPECT_TRUE(polys.insert(coeff_list(r.defining_poly)).second);
    EXPECT_LE(abs(r.field_disc), 3000);
    EXPECT_EQ(r.poly_disc, r.field_disc * r.index * r.index);
    EXPECT_EQ(r.galois.name, is_square(r.field_disc) ? "C3" : "S3");
    EXPECT_EQ(r.field_disc < 0, r.signature.r2 == 1);
    // Distinct records with equal discriminant are never isomorphic.
    for (std::size_t j = i + 1; j < c.records.size() && c.records[j].field_disc == r.field_disc; ++j)
      EXPECT_FALSE(arithmetically_equivalent(r.defining_poly, c.records[j].defining_poly));
  }
  for (std::size_t i = 0; i < c.records.size(); i += 17)
    EXPECT_EQ(canonical_generator(c.records[i].defining_poly), c.records[i].defining_poly);
}

TEST(Census, Determinism) {
  auto one = cubic(4000, {}, 1), four = cubic(4000, {}, 4);
  EXPECT_EQ(catalog_csv(one), catalog_csv(four));
  CensusParams p;
  p.degree = 4;
  p.max_disc = 800;
  CensusOptions o1, o3;
  o3.workers = 3;
  EXPECT_EQ(catalog_csv(enumerate_fields(p, o1)), catalog_csv(enumerate_fields(p, o3)));
}

TEST(Census, BudgetCheckpointResume) {
  const std::string path = (std::filesystem::temp_directory_path() / "malle_census_ckpt.json").string();
  std::filesystem::remove(path);
  CensusParams p;
  p.degree = 3;
  p.max_disc = 3000;
  CensusOptions o;
  o.budget = 500;
  o.checkpoint_path = path;
  o.workers = 2;
  EXPECT_THROW(enumerate_fields(p, o), BudgetError);
  ASSERT_TRUE(std::filesystem::exists(path));
  // Resume repeatedly with the same budget until the census completes.
  std::optional<CensusCatalog> done;
  o.resume = true;
  for (int round = 0; round < 100 && !done; ++round) {
    try {
      done = enumerate_fields(p, o);
    } catch (const BudgetError&) {
    }
  }
  ASSERT_TRUE(done.has_value());
  EXPECT_EQ(catalog_csv(*done), catalog_csv(cubic(3000)));
  CensusParams other = p;
  other.max_disc = 2999;
  EXPECT_THROW(enumerate_fields(other, o), DomainError);
  std::filesystem::remove(path);
}

TEST(Census, StopFlagInterrupts) {
  std::atomic<bool> stop{true};
  CensusParams p;
  p.degree = 3;
  p.max_disc = 1000;
  CensusOptions o;
  o.stop = &stop;
  EXPECT_THROW(enumerate_fields(p, o), BudgetError);
}

TEST(Census, Errors) {
  CensusParams p;
  p.degree = 7;
  p.max_disc = 100;
  EXPECT_THROW(enumerate_fields(p), DomainError);
  EXPECT_THROW(enumerate_quadratic(2), DomainError);
}

TEST(Census, CsvRoundTrip) {
  auto c = cubic(400);
  auto back = parse_catalog_csv("# header line\n" + catalog_csv(c));
  ASSERT_EQ(back.size(), c.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(to_csv(back[i]), to_csv(c.records[i]));
    EXPECT_EQ(back[i].index, c.records[i].index);
  }
  EXPECT_THROW(parse_catalog_csv("3,-23,S3,\"[1,-1,0,1]\",\"(1,1)\",certified\n"), ParseError);
}

TEST(Census, CountSeries) {
  auto q = enumerate_quadratic(100000);
  auto fit = count_series(q.records, 100000, default_checkpoints(100000));
  EXPECT_NEAR(fit.slope, 1.0, 0.05);
  for (std::size_t i = 1; i < fit.points.size(); ++i) EXPECT_GE(fit.points[i].second, fit.points[i - 1].second);
  EXPECT_EQ(default_checkpoints(1000), (std::vector<long long>{3, 10, 31, 100, 316, 1000}));
  EXPECT_THROW(count_series(q.records, 100000, {10, 100}), DomainError);
  EXPECT_THROW(count_series(q.records, 1000, {10, 100, 10000}), DomainError);
}

TEST(Census, Towers) {
  auto c = cubic(400, {"S3"});
  auto towers = build_s3_towers(c.records, 12);
  ASSERT_EQ(towers.size(), 12u);
  EXPECT_EQ(towers[0].K.field_disc, -23);
  EXPECT_EQ(towers[0].M.field_disc, -23);
  EXPECT_EQ(abs(towers[0].N.field_disc), 12167);
  EXPECT_EQ(towers[0].relnorm, 1);
  for (const auto& t : towers) {
    EXPECT_TRUE(t.brauer_ok);
    EXPECT_TRUE(t.tower_ok);
    EXPECT_EQ(t.N.degree, 6);
    EXPECT_EQ(t.N.galois.name, "S3");
  }
  // x^3 - 2: d_K = -108, M = Q(√-3).
  NumberFieldRecord k2 = make_record(parse_poly("x^3-2"));
  auto t2 = build_s3_towers({k2}, 1);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2[0].M.field_disc, -3);
  EXPECT_EQ(abs(t2[0].N.field_disc), 34992);
  EXPECT_TRUE(brauer_check(108, 3, 34992, 3, 2));
}

TEST(Census, HasseCrosscheck) {
  auto c = cubic(1500, {"S3"});
  auto rep = hasse_crosscheck(1500, c.records);
  EXPECT_TRUE(rep.mismatches.empty());
  bool saw23 = false;
  for (const auto& row : rep.rows) {
    if (row.D == -23) {
      saw23 = true;
      EXPECT_EQ(row.cubic_fields, 1);
      EXPECT_EQ(row.expected, 1);
    }
    if (row.D == -3 || row.D == -4) EXPECT_EQ(row.cubic_fields, 0);
  }
  EXPECT_TRUE(saw23);
}
