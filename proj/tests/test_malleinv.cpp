#include <gtest/gtest.h>

#include "malle/descriptor.hpp"
#include "malle/error.hpp"
#include "malle/groupstruct.hpp"
#include "malle/malleinv.hpp"

using namespace malle;

TEST(MalleInvariant, Dihedral) {
  for (long l : {3, 5, 7, 11, 13}) {
    auto nat = malle_a(named_group("dihedral(" + std::to_string(l) + ")"));
    EXPECT_EQ(nat.value, make_rational(2, l - 1)) << l;
    auto reg = malle_a(named_group("dihedral(" + std::to_string(l) + ")@regular"));
    EXPECT_EQ(reg.value, make_rational(1, l)) << l;
    EXPECT_EQ(ind_element(reg.witness), reg.index);
  }
}

TEST(MalleInvariant, SymmetricAndAlternating) {
  EXPECT_EQ(malle_a(named_group("S5")).value, 1);
  EXPECT_EQ(malle_a(named_group("A5")).value, make_rational(1, 2));
  EXPECT_EQ(malle_a(named_group("A4")).value, make_rational(1, 2));
  EXPECT_EQ(malle_a(named_group("affine_gf(8)")).value, make_rational(1, 4));
}

TEST(MalleInvariant, WitnessIsFirstMinimal) {
  auto G = named_group("S4");
  auto r = malle_a(G);
  for (std::size_t i = 1; i < G.order(); ++i) {
    if (G.element(i) == r.witness) break;
    EXPECT_GT(ind_element(G.element(i)), r.index);
  }
}

TEST(MalleInvariant, ClosedFormsMatchEnumeration) {
  for (long m : {5, 7, 11, 13}) {
    for (long t = 2; t < m; ++t) {
      if ((m - 1) % t) continue;
      long v = 2;
      while (multiplicative_order(v, m) != t) ++v;
      std::string d = "semidirect(" + std::to_string(m) + "," + std::to_string(t) + ";v=" +
                      std::to_string(v) + ")";
      auto G = named_group(d);
      long p1 = static_cast<long>(smallest_prime_divisor(t));
      EXPECT_EQ(malle_a(G).value, malle_a_frobenius_closed_form(m, t, m, p1)) << d;
      EXPECT_EQ(malle_a(named_group(d + "@regular")).value,
                malle_a_regular_closed_form(
                    m * t, static_cast<long>(smallest_prime_divisor(m * t))))
          << d;
    }
  }
}

TEST(MalleInvariant, Errors) {
  EXPECT_THROW(malle_a(named_group("gens(4;(1 2))")), DomainError);
  EXPECT_THROW(malle_a_frobenius_closed_form(7, 4, 7, 2), DomainError);
  EXPECT_THROW(malle_a_regular_closed_form(15, 5), DomainError);
}
