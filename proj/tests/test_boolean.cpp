#include <gtest/gtest.h>

#include "kwbound/boolean.hpp"

using namespace kwb;

TEST(BitVector, VariableOneIsLeftmost) {
  const BitVector x = BitVector::parse("100");
  EXPECT_TRUE(x[1]);
  EXPECT_FALSE(x[3]);
  EXPECT_EQ(x.str(), "100");
  EXPECT_EQ(x.weight(), 1);
}

TEST(Majority, TruthTableOfMaj3) {
  const BooleanFunction f = maj(3);
  EXPECT_EQ(f.table_hex(), "e8");
  EXPECT_EQ(f.count_ones(), 4u);
  EXPECT_TRUE(is_monotone(f));
  EXPECT_TRUE(is_self_dual(f));
}

TEST(Majority, ThresholdHoldsForEveryInput) {
  for (int n : {1, 3, 5, 7, 9}) {
    const BooleanFunction f = maj(n);
    for (std::uint32_t x = 0; x < (1u << n); ++x) EXPECT_EQ(f.eval(x), std::popcount(x) > n / 2) << n << " " << x;
  }
}

TEST(Majority, RejectsEvenArity) { EXPECT_THROW(maj(4), InvalidInput); }

TEST(Recursive, UrecMatchesNestedMajority) {
  // URecMAJ_3^2 over x1..x5: MAJ3(MAJ3(x1,x2,x3), x4, x5)
  const BooleanFunction f = urec_maj(2);
  ASSERT_EQ(f.arity(), 5);
  for (std::uint32_t x = 0; x < 32; ++x) {
    const auto bit = [&](int v) { return ((x >> (v - 1)) & 1u) != 0; };
    const bool inner = detail::maj3_bit(bit(1), bit(2), bit(3));
    EXPECT_EQ(f.eval(x), detail::maj3_bit(inner, bit(4), bit(5))) << x;
  }
}

TEST(Recursive, BrecMatchesReadOnceTree) {
  const BooleanFunction f = brec_maj(2);
  ASSERT_EQ(f.arity(), 9);
  for (std::uint32_t x = 0; x < 512; ++x) {
    bool g[3];
    for (int b = 0; b < 3; ++b) {
      const auto bit = [&](int v) { return ((x >> (3 * b + v)) & 1u) != 0; };
      g[b] = detail::maj3_bit(bit(0), bit(1), bit(2));
    }
    EXPECT_EQ(f.eval(x), detail::maj3_bit(g[0], g[1], g[2])) << x;
  }
}

TEST(Recursive, FamiliesAreMonotoneAndSelfDual) {
  for (int h = 1; h <= 4; ++h) {
    EXPECT_TRUE(is_monotone(urec_maj(h)));
    EXPECT_TRUE(is_self_dual(urec_maj(h)));
  }
  for (int h = 1; h <= 2; ++h) {
    EXPECT_TRUE(is_monotone(brec_maj(h)));
    EXPECT_TRUE(is_self_dual(brec_maj(h)));
  }
}

TEST(Terms, Maj5HasTenOfEach) {
  const BooleanFunction f = maj(5);
  EXPECT_EQ(minterms(f).size(), 10u);
  EXPECT_EQ(maxterms(f).size(), 10u);
  for (const auto& t : minterms(f).terms) EXPECT_EQ(t.weight(), 3);
  for (const auto& t : maxterms(f).terms) EXPECT_EQ(t.weight(), 2);
}

TEST(Terms, BrecStructuralTermsMatchEnumeration) {
  for (int h = 1; h <= 2; ++h) {
    const BooleanFunction f = brec_maj(h);
    EXPECT_EQ(brec_terms(h, TermKind::Minterm), minterms(f)) << h;
    EXPECT_EQ(brec_terms(h, TermKind::Maxterm), maxterms(f)) << h;
  }
}

TEST(Terms, RejectNonMonotone) {
  const BooleanFunction x_or = BooleanFunction::from_predicate(2, [](std::uint32_t x) { return std::popcount(x) == 1; });
  EXPECT_FALSE(is_monotone(x_or));
  EXPECT_THROW(minterms(x_or), InvalidInput);
}

TEST(Hex, RoundTrip) {
  for (const auto& f : {maj(3), maj(7), urec_maj(3), brec_maj(2)})
    EXPECT_EQ(BooleanFunction::from_hex(f.arity(), f.table_hex()), f);
  EXPECT_THROW(BooleanFunction::from_hex(3, "zz"), InvalidInput);
  EXPECT_THROW(BooleanFunction::from_hex(2, "ff"), InvalidInput);
}
