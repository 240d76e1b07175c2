#include <gtest/gtest.h>

#include "kwbound/builders.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/rect.hpp"
#include "kwbound/submatrices.hpp"

using namespace kwb;

namespace {
IndexMask mask_of(std::initializer_list<int> idx) {
  IndexMask m = 0;
  for (int i : idx) m |= index_bit(i);
  return m;
}
}  // namespace

// The 3x3 MAJ_3 matrix: rows are the minterms 110, 101, 011; columns the
// maxterms 100, 010, 001.
TEST(Maj3Matrix, CellsMatchHandComputation) {
  const CommMatrix m = maj_matrix(1);
  ASSERT_EQ(m.num_rows(), 3);
  ASSERT_EQ(m.num_cols(), 3);
  EXPECT_EQ(m.rows()[0].str(), "110");
  EXPECT_EQ(m.cols()[0].str(), "100");
  EXPECT_EQ(m.cell(BitVector::parse("110"), BitVector::parse("100")), mask_of({2}));
  EXPECT_EQ(m.cell(BitVector::parse("110"), BitVector::parse("001")), mask_of({1, 2, 3}));
  EXPECT_EQ(m.cell(BitVector::parse("011"), BitVector::parse("100")), mask_of({1, 2, 3}));
  EXPECT_EQ(m.cell(BitVector::parse("101"), BitVector::parse("010")), mask_of({1, 2, 3}));
  EXPECT_EQ(m.cell(BitVector::parse("101"), BitVector::parse("100")), mask_of({3}));
  EXPECT_EQ(singleton_cells(m).size(), 6u);
}

TEST(CommMatrix, SerialsAreOneBasedRowMajor) {
  const CommMatrix m = maj_matrix(1);
  EXPECT_EQ(m.ref(0, 0).serial, 1);
  EXPECT_EQ(m.ref(1, 0).serial, 4);
  EXPECT_EQ(m.position(CellRef{9}), (std::pair<int, int>{2, 2}));
  EXPECT_THROW(m.position(CellRef{10}), InvalidInput);
}

TEST(CommMatrix, GeneralVersusMonotoneCells) {
  const BitVector x = BitVector::parse("1100"), y = BitVector::parse("0110");
  EXPECT_EQ(cell_mask(Mode::General, x, y), mask_of({1, 3}));
  EXPECT_EQ(cell_mask(Mode::Monotone, x, y), mask_of({1}));
}

TEST(CommMatrix, EmptyCellsAreRejected) {
  const std::vector<BitVector> rows{BitVector::parse("10")}, cols{BitVector::parse("10")};
  EXPECT_THROW(CommMatrix(Mode::General, 2, rows, cols), InvalidInput);
  EXPECT_THROW(CommMatrix(Mode::General, 2, {}, cols), InvalidInput);
}

TEST(CommMatrix, FullGeneralMatrixOfMaj3) {
  const CommMatrix m = build_matrix(maj(3), Mode::General, Restriction::full());
  EXPECT_EQ(m.num_rows(), 4);
  EXPECT_EQ(m.num_cols(), 4);
}

TEST(Submatrices, Shapes) {
  EXPECT_EQ(maj_matrix(2).num_rows(), 10);
  EXPECT_EQ(maj_matrix(3).num_rows(), 35);
  const auto [u2, us] = urec_submatrix(2);
  EXPECT_EQ(u2.arity(), 5);
  const CommMatrix b2 = brec2_submatrix().first;
  EXPECT_EQ(b2.num_rows(), 9);
  EXPECT_EQ(b2.num_cols(), 9);
  EXPECT_EQ(b2.mode(), Mode::Monotone);
}

TEST(Rects, MaximalRectanglesOfMaj3) {
  const CommMatrix m = maj_matrix(1);
  const auto rects = enumerate_all_mono_rects(m);
  for (const auto& r : rects) EXPECT_TRUE(is_monochromatic(m, r));
  const Rect tall{line_bit(0) | line_bit(1), line_bit(0), 1};
  EXPECT_FALSE(is_monochromatic(m, tall));
  const Rect ok{line_bit(1) | line_bit(2), line_bit(0) | line_bit(1), 3};
  EXPECT_TRUE(is_monochromatic(m, ok));
  EXPECT_FALSE(is_monochromatic(m, Rect{ok.rows, ok.cols, 1}));
}

TEST(Rects, ClosureOfTwoCells) {
  const CommMatrix m = maj_matrix(1);
  // (110,100) and (011,001) are both {2}; the corners between them hold all indices
  const auto r = rect_closure_check(m, {m.ref(0, 0), m.ref(2, 2)});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->color, 2);
  EXPECT_EQ(r->num_cells(), 4);
  // {2} next to {1}: no common index
  EXPECT_FALSE(rect_closure_check(m, {m.ref(0, 0), m.ref(0, 1)}));
}
