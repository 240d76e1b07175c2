#pragma once

// Minimum partition of a communication matrix into monochromatic
// rectangles (the rectangle bound), over an explicit rectangle list.
//
// Iterative deepening on the number of rectangles; each level runs an
// exact-cover search that always branches on the uncovered cell with the
// fewest rectangles still placeable. Every returned cover is re-checked to
// be disjoint, exact and monochromatic.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"
#include "kwbound/rect.hpp"

namespace kwb {

struct CoverOptions {
  std::uint64_t node_budget = 50'000'000;
};

struct CoverResult {
  std::optional<int> size;  // exact minimum when the search completed
  int lower = 0;            // proven lower bound
  std::optional<int> upper; // best cover found
  std::vector<Rect> cover;  // witness for `upper`
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
};

inline constexpr int kMaxCoverCells = 256;

// Empty string when `cover` is an exact disjoint monochromatic cover.
inline std::string check_cover(const CommMatrix& m, const std::vector<Rect>& cover) {
  std::vector<int> count(static_cast<std::size_t>(m.num_cells()), 0);
  for (const auto& r : cover) {
    if (!in_bounds(m, r)) return "rectangle outside the matrix";
    if (!is_monochromatic(m, r)) return "rectangle not monochromatic: " + rect_str(r);
    for (int row : lines_of(r.rows))
      for (int col : lines_of(r.cols)) ++count[static_cast<std::size_t>(m.ref(row, col).serial - 1)];
  }
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] == 0) return "cell " + std::to_string(i + 1) + " uncovered";
    if (count[i] > 1) return "cell " + std::to_string(i + 1) + " covered twice";
  }
  return {};
}

namespace detail {

struct CellSet {
  std::uint64_t w[4] = {0, 0, 0, 0};
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  bool disjoint(const CellSet& o) const {
    return !((w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]) | (w[3] & o.w[3]));
  }
  void add(const CellSet& o) { for (int k = 0; k < 4; ++k) w[k] |= o.w[k]; }
  void remove(const CellSet& o) { for (int k = 0; k < 4; ++k) w[k] &= ~o.w[k]; }
  int count() const { return std::popcount(w[0]) + std::popcount(w[1]) + std::popcount(w[2]) + std::popcount(w[3]); }
};

class CoverSearch {
 public:
  CoverSearch(const CommMatrix& m, const std::vector<Rect>& rects, const CoverOptions& opts)
      : cells_(m.num_cells()), opts_(opts) {
    std::set<std::pair<LineMask, LineMask>> seen;
    for (const auto& r : rects) {
      require(in_bounds(m, r) && is_monochromatic(m, r), "min_disjoint_cover: rectangle list contains a non-monochromatic rectangle");
      if (!seen.insert({r.rows, r.cols}).second) continue;
      CellSet s;
      for (int row : lines_of(r.rows))
        for (int col : lines_of(r.cols)) s.set(m.ref(row, col).serial - 1);
      rects_.push_back(r);
      sets_.push_back(s);
      sizes_.push_back(s.count());
    }
    by_cell_.resize(static_cast<std::size_t>(cells_));
    for (std::size_t k = 0; k < sets_.size(); ++k)
      for (int c = 0; c < cells_; ++c)
        if (sets_[k].test(c)) by_cell_[static_cast<std::size_t>(c)].push_back(static_cast<int>(k));
    for (auto& list : by_cell_)
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return sizes_[static_cast<std::size_t>(a)] > sizes_[static_cast<std::size_t>(b)]; });
    max_size_ = sizes_.empty() ? 1 : *std::max_element(sizes_.begin(), sizes_.end());
  }

  // true: a cover with at most `limit` rectangles exists (witness in chosen_)
  bool search(int limit) {
    limit_ = limit;
    chosen_.clear();
    covered_ = CellSet{};
    return dfs(cells_);
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<Rect> witness() const {
    std::vector<Rect> out;
    for (int k : chosen_) out.push_back(rects_[static_cast<std::size_t>(k)]);
    return out;
  }

 private:
  bool dfs(int uncovered) {
    if (uncovered == 0) return true;
    const int used = static_cast<int>(chosen_.size());
    if (used + (uncovered + max_size_ - 1) / max_size_ > limit_) return false;
    if (++nodes_ > opts_.node_budget) { exhausted_ = true; return false; }
    int best_cell = -1;
    std::size_t best_options = SIZE_MAX;
    for (int c = 0; c < cells_; ++c) {
      if (covered_.test(c)) continue;
      std::size_t options = 0;
      for (int k : by_cell_[static_cast<std::size_t>(c)])
        if (sets_[static_cast<std::size_t>(k)].disjoint(covered_)) ++options;
      if (options < best_options) { best_options = options; best_cell = c; }
      if (options == 0) return false;
    }
    if (used + 1 > limit_) return false;
    for (int k : by_cell_[static_cast<std::size_t>(best_cell)]) {
      const CellSet& s = sets_[static_cast<std::size_t>(k)];
      if (!s.disjoint(covered_)) continue;
      covered_.add(s);
      chosen_.push_back(k);
      if (dfs(uncovered - sizes_[static_cast<std::size_t>(k)])) return true;
      chosen_.pop_back();
      covered_.remove(s);
      if (exhausted_) return false;
    }
    return false;
  }

  int cells_;
  CoverOptions opts_;
  std::vector<Rect> rects_;
  std::vector<CellSet> sets_;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> by_cell_;
  int max_size_ = 1;
  int limit_ = 0;
  std::vector<int> chosen_;
  CellSet covered_;
  bool exhausted_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline CoverResult min_disjoint_cover(const CommMatrix& m, const std::vector<Rect>& rects, CoverOptions opts = {}) {
  require(m.num_cells() <= kMaxCoverCells, "min_disjoint_cover: at most 256 cells");
  detail::CoverSearch s(m, rects, opts);
  CoverResult out;
  // the 1x1 rectangles always give an upper bound when present
  for (int limit = 1; limit <= m.num_cells(); ++limit) {
    const bool ok = s.search(limit);
    out.nodes = s.nodes();
    if (ok) {
      out.cover = s.witness();
      if (const std::string err = check_cover(m, out.cover); !err.empty())
        throw std::logic_error("min_disjoint_cover: invalid cover: " + err);
      out.upper = static_cast<int>(out.cover.size());
      out.size = out.upper;
      out.lower = *out.upper;
      return out;
    }
    if (s.exhausted()) {
      out.budget_exhausted = true;
      out.lower = limit;  // every smaller limit was refuted exhaustively
      return out;
    }
    out.lower = limit + 1;
  }
  throw InvalidInput("min_disjoint_cover: rectangle list cannot cover the matrix");
}

}  // namespace kwb
