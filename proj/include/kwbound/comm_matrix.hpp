#pragma once

// Karchmer-Wigderson communication matrices.
//
// Rows are 1-inputs (or minterms), columns are 0-inputs (or maxterms). A
// cell stores its admissible answers as a bit mask over {1..n}: bit i-1 is
// index i. General mode keeps {i : x_i != y_i}; monotone mode keeps
// {i : x_i = 1, y_i = 0}.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/error.hpp"

namespace kwb {

using IndexMask = std::uint32_t;

enum class Mode { General, Monotone };

inline const char* to_string(Mode m) { return m == Mode::General ? "general" : "monotone"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "general") return Mode::General;
  if (s == "monotone") return Mode::Monotone;
  throw InvalidInput("unknown mode '" + s + "'");
}

inline IndexMask index_bit(int i) { return IndexMask{1} << (i - 1); }

inline std::vector<int> indices_of(IndexMask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

inline IndexMask cell_mask(Mode mode, const BitVector& x, const BitVector& y) {
  return mode == Mode::General ? (x.bits ^ y.bits) : (x.bits & ~y.bits);
}

// 1-based row-major serial number of a cell.
struct CellRef {
  int serial = 0;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

class CommMatrix {
 public:
  CommMatrix() = default;

  // Rejects any empty cell: such a restriction is not a KW sub-instance.
  CommMatrix(Mode mode, int n, std::vector<BitVector> rows, std::vector<BitVector> cols,
             std::string provenance = {})
      : mode_(mode), n_(n), rows_(std::move(rows)), cols_(std::move(cols)),
        provenance_(std::move(provenance)) {
    require(!rows_.empty() && !cols_.empty(), "CommMatrix: empty row or column list");
    for (const auto& v : rows_) require(v.n == n_, "CommMatrix: row arity mismatch");
    for (const auto& v : cols_) require(v.n == n_, "CommMatrix: column arity mismatch");
    cells_.resize(rows_.size() * cols_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < cols_.size(); ++c) {
        const IndexMask m = cell_mask(mode_, rows_[r], cols_[c]);
        if (m == 0)
          throw InvalidInput("CommMatrix: empty cell at (" + rows_[r].str() + ", " + cols_[c].str() + ")");
        cells_[r * cols_.size() + c] = m;
      }
  }

  Mode mode() const { return mode_; }
  int arity() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return static_cast<int>(cols_.size()); }
  int num_cells() const { return num_rows() * num_cols(); }
  const std::vector<BitVector>& rows() const { return rows_; }
  const std::vector<BitVector>& cols() const { return cols_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  IndexMask cell(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * cols_.size() + static_cast<std::size_t>(c)];
  }
  IndexMask cell(CellRef ref) const {
    const auto [r, c] = position(ref);
    return cell(r, c);
  }

  CellRef ref(int r, int c) const { return CellRef{r * num_cols() + c + 1}; }
  std::pair<int, int> position(CellRef ref) const {
    require(valid(ref), "CellRef: serial " + std::to_string(ref.serial) + " outside the matrix");
    return {(ref.serial - 1) / num_cols(), (ref.serial - 1) % num_cols()};
  }
  bool valid(CellRef ref) const { return ref.serial >= 1 && ref.serial <= num_cells(); }

  int row_index(const BitVector& x) const { return find_in(rows_, x); }
  int col_index(const BitVector& y) const { return find_in(cols_, y); }
  IndexMask cell(const BitVector& x, const BitVector& y) const {
    const int r = row_index(x), c = col_index(y);
    require(r >= 0 && c >= 0, "CommMatrix: no such row/column");
    return cell(r, c);
  }

  // Highest index appearing in any cell.
  int max_index() const {
    IndexMask all = 0;
    for (auto m : cells_) all |= m;
    return all ? 32 - std::countl_zero(all) : 0;
  }

  friend bool operator==(const CommMatrix& a, const CommMatrix& b) {
    return a.mode_ == b.mode_ && a.n_ == b.n_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.cells_ == b.cells_ && a.provenance_ == b.provenance_;
  }

 private:
  static int find_in(const std::vector<BitVector>& v, const BitVector& x) {
    const auto it = std::find(v.begin(), v.end(), x);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  }

  Mode mode_ = Mode::General;
  int n_ = 0;
  std::vector<BitVector> rows_, cols_;
  std::vector<IndexMask> cells_;
  std::string provenance_;
};

struct Restriction {
  enum class Kind { Full, Terms, Explicit };
  Kind kind = Kind::Terms;
  std::vector<BitVector> rows, cols;

  static Restriction full() { return {Kind::Full, {}, {}}; }
  static Restriction terms() { return {Kind::Terms, {}, {}}; }
  static Restriction explicit_lists(std::vector<BitVector> r, std::vector<BitVector> c) {
    return {Kind::Explicit, std::move(r), std::move(c)};
  }
};

inline constexpr std::uint64_t kMaxMatrixCells = 10'000'000;

inline CommMatrix build_matrix(const BooleanFunction& f, Mode mode, const Restriction& restriction,
                               std::string provenance = {}) {
  require(f.arity() <= 23, "build_matrix: arity must be at most 23");
  std::vector<BitVector> rows, cols;
  switch (restriction.kind) {
    case Restriction::Kind::Full: {
      const std::uint64_t ones = f.count_ones();
      require(ones * (f.size() - ones) <= kMaxMatrixCells, "build_matrix: more than 1e7 cells");
      for (std::uint64_t x = 0; x < f.size(); ++x)
        (f.eval(static_cast<std::uint32_t>(x)) ? rows : cols)
            .emplace_back(f.arity(), static_cast<std::uint32_t>(x));
      break;
    }
    case Restriction::Kind::Terms: {
      rows = minterms(f).terms;
      cols = maxterms(f).terms;
      require(static_cast<std::uint64_t>(rows.size()) * cols.size() <= kMaxMatrixCells,
              "build_matrix: more than 1e7 cells");
      break;
    }
    case Restriction::Kind::Explicit: {
      rows = restriction.rows;
      cols = restriction.cols;
      for (const auto& x : rows)
        require(x.n == f.arity() && f.eval(x.bits), "build_matrix: explicit row " + x.str() + " is not a 1-input");
      for (const auto& y : cols)
        require(y.n == f.arity() && !f.eval(y.bits), "build_matrix: explicit column " + y.str() + " is not a 0-input");
      break;
    }
  }
  if (mode == Mode::Monotone && restriction.kind == Restriction::Kind::Full)
    require(is_monotone(f), "build_matrix: monotone mode needs a monotone function");
  if (provenance.empty())
    provenance = std::string(to_string(mode)) +
                 (restriction.kind == Restriction::Kind::Full ? " full"
                  : restriction.kind == Restriction::Kind::Terms ? " terms" : " explicit");
  return CommMatrix(mode, f.arity(), std::move(rows), std::move(cols), std::move(provenance));
}

struct SingletonCell {
  CellRef cell;
  int index;
  friend bool operator==(const SingletonCell&, const SingletonCell&) = default;
};

// All cells holding exactly one index, row-major.
inline std::vector<SingletonCell> singleton_cells(const CommMatrix& m) {
  std::vector<SingletonCell> out;
  for (int r = 0; r < m.num_rows(); ++r)
    for (int c = 0; c < m.num_cols(); ++c)
      if (std::has_single_bit(m.cell(r, c)))
        out.push_back({m.ref(r, c), std::countr_zero(m.cell(r, c)) + 1});
  return out;
}

// Paper-figure style CSV: header of column bitstrings, one line per row,
// cells as quoted comma-joined indices.
inline std::string to_csv(const CommMatrix& m) {
  std::ostringstream os;
  os << "row";
  for (const auto& c : m.cols()) os << ',' << c.str();
  os << '\n';
  for (int r = 0; r < m.num_rows(); ++r) {
    os << m.rows()[static_cast<std::size_t>(r)].str();
    for (int c = 0; c < m.num_cols(); ++c) {
      os << ",\"";
      const auto idx = indices_of(m.cell(r, c));
      for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
      os << '"';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kwb
