#include <gtest/gtest.h>

#include "kwbound/boolean.hpp"
#include "kwbound/formula.hpp"
#include "kwbound/formula_search.hpp"

using namespace kwb;

TEST(Formula, Maj3FormulaComputesMaj3WithFiveLeaves) {
  const Formula f = maj3_formula();
  EXPECT_EQ(f.size(), 5);
  EXPECT_EQ(formula_to_function(f, 3), maj(3));
}

TEST(Formula, UrecFormulaHasSize4hPlus1) {
  for (int h = 1; h <= 5; ++h) {
    const Formula f = urec_formula(h);
    EXPECT_EQ(f.size(), 4 * h + 1);
    EXPECT_EQ(formula_to_function(f, 2 * h + 1), urec_maj(h)) << h;
  }
}

TEST(Formula, BrecFormulaHasSize5h) {
  EXPECT_EQ(brec_formula(1).size(), 5);
  EXPECT_EQ(brec_formula(2).size(), 25);
  EXPECT_EQ(brec_formula(3).size(), 125);
  EXPECT_EQ(formula_to_function(brec_formula(2), 9), brec_maj(2));
  // 27 inputs: spot-check against the evaluator on a deterministic sample
  const Formula f3 = brec_formula(3);
  const BrecMajority g(3);
  std::uint32_t x = 12345;
  for (int i = 0; i < 20000; ++i) {
    x = x * 1103515245u + 12345u;
    const std::uint32_t in = x & ((1u << 27) - 1);
    ASSERT_EQ(f3.eval(in), g.eval(in)) << in;
  }
}

TEST(Formula, StringForm) {
  EXPECT_EQ(Formula::conj(Formula::literal(1), Formula::literal(2, true)).str(), "(x1 & ~x2)");
}

TEST(BruteForce, SmallFunctions) {
  const BooleanFunction x1 = BooleanFunction::from_predicate(2, [](std::uint32_t x) { return (x & 1u) != 0; });
  EXPECT_EQ(brute_force_formula_size(x1, false).size, 1);
  const BooleanFunction parity2 = BooleanFunction::from_predicate(2, [](std::uint32_t x) { return std::popcount(x) == 1; });
  EXPECT_EQ(brute_force_formula_size(parity2, false).size, 4);
  // parity is not monotone: no monotone formula of any size
  EXPECT_FALSE(brute_force_formula_size(parity2, true).size.has_value());
  const BooleanFunction parity3 = BooleanFunction::from_predicate(3, [](std::uint32_t x) { return std::popcount(x) % 2 == 1; });
  // one more than Khrapchenko's n^2
  EXPECT_EQ(brute_force_formula_size(parity3, false).size, 10);
}

TEST(BruteForce, Maj3IsFiveInBothModes) {
  for (bool mono : {false, true}) {
    const auto r = brute_force_formula_size(maj(3), mono);
    ASSERT_TRUE(r.size);
    EXPECT_EQ(*r.size, 5);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(formula_to_function(*r.witness, 3), maj(3));
  }
}

TEST(BruteForce, UrecMaj2IsNine) {
  const auto r = brute_force_formula_size(urec_maj(2), false);
  ASSERT_TRUE(r.size);
  EXPECT_EQ(*r.size, 9);
  EXPECT_EQ(formula_to_function(*r.witness, 5), urec_maj(2));
}

TEST(BruteForce, CapAndArityLimits) {
  EXPECT_FALSE(brute_force_formula_size(urec_maj(2), false, 8).size.has_value());
  EXPECT_THROW(brute_force_formula_size(maj(7), false), InvalidInput);
}
