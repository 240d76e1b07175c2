#pragma once

// The structured submatrices used by the recursive-majority certificates.
//
// urec_submatrix(h): S_h over all minterms x all maxterms of URecMAJ_3^h,
// rows ordered [11, 01-block, 10-block] and columns [00, 10-block, 01-block]
// where the two-bit labels are (x_{2h}, x_{2h+1}). The (01,01) and (10,10)
// blocks are copies of S_{h-1}; the (01,10) and (10,01) blocks are T_{h-1}.
//
// brec_submatrix(h): the 3^h x 3^h "same structure" submatrix of
// BRecMAJ_3^h, rows grouped by the top-level pattern 110/101/011 and columns
// by 100/010/001, recursing inside each group.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"

namespace kwb {

// A rectangular block of a structured submatrix. `shift` is the index
// offset of an S-copy (S_l(k) holds index i + shift wherever S_l holds i).
struct MatrixBlock {
  std::string label;  // "S", "T", "T(1,2)", ...
  int level = 0;
  int row0 = 0, nrows = 0, col0 = 0, ncols = 0;
  int shift = 0;
  friend bool operator==(const MatrixBlock&, const MatrixBlock&) = default;
};

struct SubmatrixSpec {
  std::string family;  // "maj", "urec", "brec"
  int param = 0;
  std::vector<MatrixBlock> blocks;

  std::vector<MatrixBlock> blocks_of(const std::string& label, int level) const {
    std::vector<MatrixBlock> out;
    for (const auto& b : blocks)
      if (b.label == label && b.level == level) out.push_back(b);
    return out;
  }
};

namespace detail {

struct Layout {
  std::vector<std::uint32_t> rows, cols;
  std::vector<MatrixBlock> blocks;
};

inline void shift_blocks(std::vector<MatrixBlock>& out, const std::vector<MatrixBlock>& in, int dr,
                         int dc, int dshift) {
  for (auto b : in) {
    b.row0 += dr;
    b.col0 += dc;
    b.shift += dshift;
    out.push_back(b);
  }
}

inline Layout urec_layout(int l) {
  if (l == 1) return {{0b011, 0b101, 0b110}, {0b001, 0b010, 0b100}, {{"S", 1, 0, 3, 0, 3, 0}}};
  const Layout sub = urec_layout(l - 1);
  const int s = static_cast<int>(sub.rows.size());
  const std::uint32_t b_lo = 1u << (2 * l - 1);  // x_{2l}
  const std::uint32_t b_hi = 1u << (2 * l);      // x_{2l+1}
  Layout out;
  out.rows.push_back(b_lo | b_hi);
  for (auto r : sub.rows) out.rows.push_back(r | b_hi);  // "01"
  for (auto r : sub.rows) out.rows.push_back(r | b_lo);  // "10"
  out.cols.push_back(b_lo - 1);                          // "00": lower bits all one
  for (auto c : sub.cols) out.cols.push_back(c | b_lo);  // "10"
  for (auto c : sub.cols) out.cols.push_back(c | b_hi);  // "01"
  out.blocks.push_back({"S", l, 0, 2 * s + 1, 0, 2 * s + 1, 0});
  out.blocks.push_back({"T", l - 1, 1, s, 1, s, 0});
  out.blocks.push_back({"T", l - 1, 1 + s, s, 1 + s, s, 0});
  shift_blocks(out.blocks, sub.blocks, 1, 1 + s, 0);
  shift_blocks(out.blocks, sub.blocks, 1 + s, 1, 0);
  return out;
}

inline Layout brec_layout(int h) {
  if (h == 1) return {{0b011, 0b101, 0b110}, {0b001, 0b010, 0b100}, {{"S", 1, 0, 3, 0, 3, 0}}};
  const Layout sub = brec_layout(h - 1);
  int w = 1;
  for (int i = 1; i < h; ++i) w *= 3;
  const std::uint32_t full = (1u << w) - 1;
  const int s = static_cast<int>(sub.rows.size());
  static constexpr std::uint32_t kRowPat[3] = {0b011, 0b101, 0b110};  // 110, 101, 011
  static constexpr std::uint32_t kColPat[3] = {0b001, 0b010, 0b100};  // 100, 010, 001
  Layout out;
  for (auto pat : kRowPat)
    for (auto r : sub.rows) {
      std::uint32_t x = 0;
      for (int k = 0; k < 3; ++k)
        if ((pat >> k) & 1u) x |= r << (k * w);
      out.rows.push_back(x);
    }
  for (auto pat : kColPat)
    for (auto c : sub.cols) {
      std::uint32_t y = 0;
      for (int k = 0; k < 3; ++k) y |= (((pat >> k) & 1u) ? full : c) << (k * w);
      out.cols.push_back(y);
    }
  out.blocks.push_back({"S", h, 0, 3 * s, 0, 3 * s, 0});
  // Block (i, j) holds x & ~y restricted to the children active in row
  // pattern i and not saturated by column pattern j.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::vector<int> kids;
      for (int k = 0; k < 3; ++k)
        if (((kRowPat[i] >> k) & 1u) && !((kColPat[j] >> k) & 1u)) kids.push_back(k + 1);
      if (kids.size() == 1) {
        shift_blocks(out.blocks, sub.blocks, i * s, j * s, (kids[0] - 1) * w);
      } else {
        out.blocks.push_back({"T(" + std::to_string(kids[0]) + "," + std::to_string(kids[1]) + ")",
                              h - 1, i * s, s, j * s, s, 0});
      }
    }
  return out;
}

inline std::vector<BitVector> to_vectors(int n, const std::vector<std::uint32_t>& v) {
  std::vector<BitVector> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(n, x);
  return out;
}

}  // namespace detail

inline std::pair<CommMatrix, SubmatrixSpec> urec_submatrix(int h, Mode mode = Mode::General) {
  require(h >= 1 && h <= 5, "urec_submatrix: h must be 1..5");
  const auto layout = detail::urec_layout(h);
  const int n = 2 * h + 1;
  const UrecMajority f(h);
  for (auto x : layout.rows)
    if (!is_minterm(f, x)) throw std::logic_error("urec_submatrix: row is not a minterm");
  for (auto y : layout.cols)
    if (!is_maxterm(f, y)) throw std::logic_error("urec_submatrix: column is not a maxterm");
  CommMatrix m(mode, n, detail::to_vectors(n, layout.rows), detail::to_vectors(n, layout.cols),
               "urec h=" + std::to_string(h) + " S_h " + to_string(mode));
  return {std::move(m), SubmatrixSpec{"urec", h, layout.blocks}};
}

inline std::pair<CommMatrix, SubmatrixSpec> brec_submatrix(int h) {
  require(h >= 1 && h <= 3, "brec_submatrix: h must be 1..3");
  const auto layout = detail::brec_layout(h);
  const BrecMajority f(h);
  for (auto x : layout.rows)
    if (!is_minterm(f, x)) throw std::logic_error("brec_submatrix: row is not a minterm");
  for (auto y : layout.cols)
    if (!is_maxterm(f, y)) throw std::logic_error("brec_submatrix: column is not a maxterm");
  CommMatrix m(Mode::Monotone, f.arity(), detail::to_vectors(f.arity(), layout.rows),
               detail::to_vectors(f.arity(), layout.cols),
               "brec h=" + std::to_string(h) + " S_h monotone");
  return {std::move(m), SubmatrixSpec{"brec", h, layout.blocks}};
}

// The 9 x 9 monotone submatrix of BRecMAJ_3^2 over the listed minterms and
// maxterms, in figure order, so serials 1..81 address cells row-major.
inline std::pair<CommMatrix, SubmatrixSpec> brec2_submatrix() {
  static const char* kRows[9] = {"110,110,000", "101,101,000", "011,011,000",
                                 "110,000,110", "101,000,101", "011,000,011",
                                 "000,110,110", "000,101,101", "000,011,011"};
  static const char* kCols[9] = {"111,100,100", "111,010,010", "111,001,001",
                                 "100,111,100", "010,111,010", "001,111,001",
                                 "100,100,111", "010,010,111", "001,001,111"};
  // rows listed by (outer, inner) as in the figure: outer 110 = children 1,2
  std::vector<BitVector> rows, cols;
  static constexpr int kRowOrder[9] = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (int i : kRowOrder) rows.push_back(BitVector::parse(kRows[i]));
  for (const char* c : kCols) cols.push_back(BitVector::parse(c));
  const BrecMajority f(2);
  for (const auto& x : rows)
    if (!is_minterm(f, x.bits)) throw std::logic_error("brec2_submatrix: bad minterm");
  for (const auto& y : cols)
    if (!is_maxterm(f, y.bits)) throw std::logic_error("brec2_submatrix: bad maxterm");
  CommMatrix m(Mode::Monotone, 9, std::move(rows), std::move(cols), "brec h=2 9x9 submatrix");
  return {std::move(m), SubmatrixSpec{"brec", 2, detail::brec_layout(2).blocks}};
}

}  // namespace kwb
