#pragma once

// Monochromatic rectangles of a communication matrix.
//
// A Rect is a row set x column set (bit masks over matrix rows/columns, so
// at most 64 of each) together with a color index that every covered cell
// contains.

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"

namespace kwb {

using LineMask = std::uint64_t;

inline constexpr int kMaxRectLines = 64;

inline LineMask line_bit(int i) { return LineMask{1} << i; }

inline std::vector<int> lines_of(LineMask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

struct Rect {
  LineMask rows = 0;
  LineMask cols = 0;
  int color = 0;

  int num_cells() const { return std::popcount(rows) * std::popcount(cols); }
  bool contains(int r, int c) const { return ((rows >> r) & 1u) && ((cols >> c) & 1u); }
  bool contains(const CommMatrix& m, CellRef ref) const {
    const auto [r, c] = m.position(ref);
    return contains(r, c);
  }
  bool same_cells(const Rect& o) const { return rows == o.rows && cols == o.cols; }

  friend bool operator==(const Rect&, const Rect&) = default;
  friend auto operator<=>(const Rect& a, const Rect& b) {
    if (auto c = a.color <=> b.color; c != 0) return c;
    if (auto c = a.rows <=> b.rows; c != 0) return c;
    return a.cols <=> b.cols;
  }
};

inline void require_rect_capacity(const CommMatrix& m) {
  require(m.num_rows() <= kMaxRectLines && m.num_cols() <= kMaxRectLines,
          "rectangle engine supports at most 64 rows and 64 columns");
}

inline LineMask all_rows(const CommMatrix& m) {
  return m.num_rows() == 64 ? ~LineMask{0} : line_bit(m.num_rows()) - 1;
}
inline LineMask all_cols(const CommMatrix& m) {
  return m.num_cols() == 64 ? ~LineMask{0} : line_bit(m.num_cols()) - 1;
}

inline bool in_bounds(const CommMatrix& m, const Rect& r) {
  return r.rows != 0 && r.cols != 0 && (r.rows & ~all_rows(m)) == 0 && (r.cols & ~all_cols(m)) == 0;
}

// Per-row admissible columns of one color.
class ColorRegion {
 public:
  ColorRegion(const CommMatrix& m, int color) : color_(color) {
    require_rect_capacity(m);
    require(color >= 1 && color <= m.arity(), "ColorRegion: color out of range");
    admissible_.assign(static_cast<std::size_t>(m.num_rows()), 0);
    const IndexMask bit = index_bit(color);
    for (int r = 0; r < m.num_rows(); ++r)
      for (int c = 0; c < m.num_cols(); ++c)
        if (m.cell(r, c) & bit) admissible_[static_cast<std::size_t>(r)] |= line_bit(c);
  }

  int color() const { return color_; }
  int num_rows() const { return static_cast<int>(admissible_.size()); }
  LineMask admissible(int r) const { return admissible_[static_cast<std::size_t>(r)]; }

  // Columns admissible for every row in `rows` (all columns when empty).
  LineMask common(LineMask rows) const {
    LineMask acc = ~LineMask{0};
    for (int r : lines_of(rows)) acc &= admissible(r);
    return acc;
  }

 private:
  int color_;
  std::vector<LineMask> admissible_;
};

inline bool is_monochromatic(const CommMatrix& m, const Rect& rect) {
  require(in_bounds(m, rect), "is_monochromatic: rectangle outside the matrix");
  if (rect.color < 1 || rect.color > m.arity()) return false;
  const IndexMask bit = index_bit(rect.color);
  for (int r : lines_of(rect.rows))
    for (int c : lines_of(rect.cols))
      if (!(m.cell(r, c) & bit)) return false;
  return true;
}

// Indices common to every cell of the row x column product.
inline IndexMask common_indices(const CommMatrix& m, LineMask rows, LineMask cols) {
  IndexMask acc = ~IndexMask{0};
  for (int r : lines_of(rows))
    for (int c : lines_of(cols)) acc &= m.cell(r, c);
  return acc;
}

// Smallest rectangle containing `cells` (spanned rows x spanned columns),
// colored with the lowest index common to all covered cells, if any.
inline std::optional<Rect> rect_closure_check(const CommMatrix& m, const std::vector<CellRef>& cells) {
  require_rect_capacity(m);
  require(!cells.empty(), "rect_closure_check: no cells");
  Rect r;
  for (const auto& ref : cells) {
    const auto [row, col] = m.position(ref);
    r.rows |= line_bit(row);
    r.cols |= line_bit(col);
  }
  const IndexMask common = common_indices(m, r.rows, r.cols);
  if (common == 0) return std::nullopt;
  r.color = std::countr_zero(common) + 1;
  return r;
}

inline bool rects_intersect(const Rect& a, const Rect& b) {
  return (a.rows & b.rows) != 0 && (a.cols & b.cols) != 0;
}

inline constexpr std::uint64_t kDefaultRectCap = 10'000'000;

// Every monochromatic rectangle, ordered by (color, rows, cols) as masks.
// Rectangles covering the same cells with different colors are listed once
// per color.
inline std::vector<Rect> enumerate_all_mono_rects(const CommMatrix& m, std::uint64_t cap = kDefaultRectCap) {
  require_rect_capacity(m);
  std::vector<Rect> out;
  const LineMask full_rows = all_rows(m);
  for (int color = 1; color <= m.arity(); ++color) {
    const ColorRegion region(m, color);
    // rows that admit at least one column of this color
    LineMask live = 0;
    for (int r = 0; r < m.num_rows(); ++r)
      if (region.admissible(r)) live |= line_bit(r);
    if (std::popcount(live) > 24)
      throw BudgetExceeded("enumerate_all_mono_rects: color region too large to enumerate");
    std::vector<Rect> found;
    // submasks of `live` in ascending numeric order
    std::vector<LineMask> row_sets;
    for (LineMask s = live; s; s = (s - 1) & live) row_sets.push_back(s);
    for (auto it = row_sets.rbegin(); it != row_sets.rend(); ++it) {
      const LineMask rows = *it & full_rows;
      const LineMask common = region.common(rows);
      if (!common) continue;
      std::vector<LineMask> col_sets;
      for (LineMask s = common; s; s = (s - 1) & common) col_sets.push_back(s);
      if (out.size() + found.size() + col_sets.size() > cap)
        throw BudgetExceeded("enumerate_all_mono_rects: more than " + std::to_string(cap) + " rectangles");
      for (auto c = col_sets.rbegin(); c != col_sets.rend(); ++c) found.push_back(Rect{rows, *c, color});
    }
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

inline std::string rect_str(const Rect& r) {
  std::string s = "color " + std::to_string(r.color) + " rows{";
  bool first = true;
  for (int i : lines_of(r.rows)) { s += (first ? "" : ",") + std::to_string(i + 1); first = false; }
  s += "} cols{";
  first = true;
  for (int i : lines_of(r.cols)) { s += (first ? "" : ",") + std::to_string(i + 1); first = false; }
  return s + "}";
}

}  // namespace kwb
