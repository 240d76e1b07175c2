#include <gtest/gtest.h>

#include "kwbound/builders.hpp"
#include "kwbound/cutting_plane.hpp"
#include "kwbound/exact_cover.hpp"
#include "kwbound/formula_search.hpp"
#include "kwbound/submatrices.hpp"

using namespace kwb;

namespace {
// every rectangle the LP used has value <= 1 under the returned dual
void expect_consistent(const CommMatrix& m, const BoundResult& b) {
  ASSERT_TRUE(b.final);
  EXPECT_EQ(b.lower, b.value);
  EXPECT_EQ(b.upper, b.value);
  const VerifyResult v = verify_certificate(m, b.certificate);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.objective, b.value);
}
}  // namespace

TEST(LpBound, Maj3IsNineHalves) {
  const CommMatrix m = maj_matrix(1);
  const BoundResult b = lp_bound(m);
  EXPECT_EQ(b.value, Rational(9, 2));
  expect_consistent(m, b);
}

TEST(LpBound, Maj5) {
  const CommMatrix m = maj_matrix(2);
  const BoundResult b = lp_bound(m);
  EXPECT_EQ(b.value, Rational(55, 6));
  expect_consistent(m, b);
}

TEST(LpBound, UrecGeneral) {
  const CommMatrix m = urec_submatrix(2).first;
  const BoundResult b = lp_bound(m);
  EXPECT_EQ(b.value, Rational(25, 3));
  expect_consistent(m, b);
}

TEST(LpBound, Brec2SubmatrixStaysBelowTwenty) {
  const CommMatrix m = brec2_submatrix().first;
  const BoundResult b = lp_bound(m);
  EXPECT_EQ(b.value, Rational(33, 2));
  EXPECT_LT(b.value, Rational(20));
  expect_consistent(m, b);
}

TEST(LpBound, ExactEngineAgreesWithGuidedRun) {
  BoundOptions opts;
  opts.float_guide = false;
  EXPECT_EQ(lp_bound(maj_matrix(1), opts).value, Rational(9, 2));
  EXPECT_EQ(lp_bound(maj_matrix(2), opts).value, Rational(55, 6));
}

TEST(LpBound, BudgetGivesSoundInterval) {
  BoundOptions opts;
  opts.max_rounds = 1;
  const BoundResult b = lp_bound(maj_matrix(2), opts);
  if (!b.final) {
    EXPECT_LE(b.lower, Rational(55, 6));
    EXPECT_GE(b.upper, Rational(55, 6));
    EXPECT_FALSE(b.note.empty());
  } else {
    EXPECT_EQ(b.value, Rational(55, 6));
  }
}

TEST(StrengthenedBound, Maj3CliqueLiftsToFive) {
  const CommMatrix m = maj_matrix(1);
  const DualCertificate c = cert_maj3();
  const BoundResult b = strengthened_bound(m, c.cliques, {});
  EXPECT_GE(b.value, Rational(5));
  EXPECT_TRUE(verify_certificate(m, b.certificate).feasible);
}

TEST(StrengthenedBound, RejectsInvalidClique) {
  const CommMatrix m = maj_matrix(1);
  // generator pairs must be singletons of one index; these mix {2} with {1}
  CliqueSpec bad{{CellPair{m.ref(0, 0), m.ref(0, 1)}, CellPair{m.ref(1, 0), m.ref(1, 2)}}, Rational(-1)};
  EXPECT_THROW(strengthened_bound(m, {bad}, {}), InvalidInput);
}

TEST(Cover, Maj3NeedsFive) {
  const CommMatrix m = maj_matrix(1);
  const CoverResult c = min_disjoint_cover(m, enumerate_all_mono_rects(m));
  ASSERT_TRUE(c.size);
  EXPECT_EQ(*c.size, 5);
  EXPECT_EQ(check_cover(m, c.cover), "");
}

TEST(Cover, CheckCoverCatchesOverlap) {
  const CommMatrix m = maj_matrix(1);
  std::vector<Rect> cover = min_disjoint_cover(m, enumerate_all_mono_rects(m)).cover;
  ASSERT_FALSE(cover.empty());
  cover.push_back(cover.front());
  EXPECT_NE(check_cover(m, cover), "");
}

TEST(Cover, UrecTwoIsNine) {
  const CommMatrix m = urec_submatrix(2).first;
  const CoverResult c = min_disjoint_cover(m, enumerate_all_mono_rects(m));
  ASSERT_TRUE(c.size);
  EXPECT_EQ(*c.size, 9);
}

// Weak duality on MAJ_3: LP <= LP with clique <= rectangle cover <= formula size.
TEST(DualityChain, Maj3) {
  const CommMatrix m = maj_matrix(1);
  const Rational lp = lp_bound(m).value;
  const Rational strong = strengthened_bound(m, cert_maj3().cliques, {}).value;
  const int cover = *min_disjoint_cover(m, enumerate_all_mono_rects(m)).size;
  const int brute = *brute_force_formula_size(maj(3), false).size;
  EXPECT_LE(lp, strong);
  EXPECT_LE(strong, Rational(cover));
  EXPECT_LE(cover, brute);
  EXPECT_EQ(lp, Rational(9, 2));
  EXPECT_EQ(brute, 5);
}
