#pragma once

// Exact maximization of a linear form over the monochromatic rectangles of
// one color: the separation oracle of the rectangle LP.
//
// The form gives every cell a weight and every penalty group a nonpositive
// multiplier; a rectangle pays a group's multiplier (once) when it contains
// both cells of at least one of the group's generator pairs.
//
// Search: depth-first over row sets (rows ordered by descending positive
// weight). The admissible column set shrinks as rows are added. For a fixed
// row set the best column set only uses columns with positive column sum,
// except for the single-column fallback, so a small inner branch-and-bound
// over those columns handles the penalties. The outer bound ignores
// penalties (they are <= 0), summing for each admissible column the
// positive part of its current sum plus the positive weights still
// addable. Weights are scaled to integers first; 64-bit arithmetic is used
// when it cannot overflow, GMP integers otherwise.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/rect.hpp"

namespace kwb {

struct CellPair {
  CellRef a, b;
  friend bool operator==(const CellPair&, const CellPair&) = default;
};

struct PenaltyGroup {
  std::vector<CellPair> pairs;
  Rational z;  // <= 0
};

struct RectLinearForm {
  std::vector<Rational> weights;  // indexed by serial - 1
  std::vector<PenaltyGroup> groups;

  static RectLinearForm zero(const CommMatrix& m) {
    RectLinearForm f;
    f.weights.assign(static_cast<std::size_t>(m.num_cells()), Rational(0));
    return f;
  }
  const Rational& weight(CellRef c) const { return weights.at(static_cast<std::size_t>(c.serial - 1)); }
  void set(CellRef c, Rational v) { weights.at(static_cast<std::size_t>(c.serial - 1)) = std::move(v); }
};

inline bool pair_in_rect(const CommMatrix& m, const CellPair& p, const Rect& r) {
  return r.contains(m, p.a) && r.contains(m, p.b);
}

inline bool group_contains(const CommMatrix& m, const PenaltyGroup& g, const Rect& r) {
  return std::any_of(g.pairs.begin(), g.pairs.end(), [&](const CellPair& p) { return pair_in_rect(m, p, r); });
}

// Direct evaluation of the form on one rectangle.
inline Rational evaluate_form(const CommMatrix& m, const RectLinearForm& f, const Rect& r) {
  Rational v(0);
  for (int row : lines_of(r.rows))
    for (int col : lines_of(r.cols)) v += f.weight(m.ref(row, col));
  for (const auto& g : f.groups)
    if (group_contains(m, g, r)) v += g.z;
  return v;
}

struct OracleOptions {
  std::uint64_t node_budget = 500'000'000;
};

struct OracleResult {
  bool found = false;  // false only when the color has no admissible cell
  Rect rect;
  Rational value;
  bool exact = true;   // false: node budget ran out
  Rational upper;      // upper bound on the true maximum (== value when exact)
  std::uint64_t nodes = 0;
};

namespace detail {

inline mpz_class lcm_denominators(const RectLinearForm& f) {
  mpz_class l = 1;
  for (const auto& w : f.weights) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.den().get_mpz_t());
  for (const auto& g : f.groups) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.z.den().get_mpz_t());
  return l;
}

template <class Num>
Num to_num(const mpz_class& z) {
  if constexpr (std::is_same_v<Num, mpz_class>) {
    return z;
  } else {
    return static_cast<Num>(z.get_si());
  }
}

template <class Num>
mpz_class from_num(const Num& v) {
  if constexpr (std::is_same_v<Num, mpz_class>) {
    return v;
  } else {
    return mpz_class(static_cast<long>(v));
  }
}

template <class Num>
class OracleSearch {
 public:
  struct Pair {
    LineMask rows, cols;
    int group;
  };

  OracleSearch(const CommMatrix& m, const RectLinearForm& f, int color, const mpz_class& scale,
               const OracleOptions& opts)
      : region_(m, color), nrows_(m.num_rows()), ncols_(m.num_cols()), opts_(opts) {
    weights_.assign(static_cast<std::size_t>(nrows_ * ncols_), Num(0));
    for (int r = 0; r < nrows_; ++r)
      for (int c : lines_of(region_.admissible(r)))
        weights_[idx(r, c)] = to_num<Num>(mpz_class(f.weight(m.ref(r, c)).raw() * scale));
    const IndexMask bit = index_bit(color);
    for (std::size_t g = 0; g < f.groups.size(); ++g) {
      group_z_.push_back(to_num<Num>(mpz_class(f.groups[g].z.raw() * scale)));
      for (const auto& p : f.groups[g].pairs) {
        if (!(m.cell(p.a) & bit) || !(m.cell(p.b) & bit)) continue;
        const auto [ra, ca] = m.position(p.a);
        const auto [rb, cb] = m.position(p.b);
        pairs_.push_back({line_bit(ra) | line_bit(rb), line_bit(ca) | line_bit(cb), static_cast<int>(g)});
      }
    }
    hits_.assign(f.groups.size(), 0);
    // row order: descending total positive weight, ties by index
    std::vector<Num> pos_total(static_cast<std::size_t>(nrows_), Num(0));
    for (int r = 0; r < nrows_; ++r) {
      if (!region_.admissible(r)) continue;
      for (int c = 0; c < ncols_; ++c)
        if (weights_[idx(r, c)] > 0) pos_total[static_cast<std::size_t>(r)] += weights_[idx(r, c)];
      order_.push_back(r);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return pos_total[static_cast<std::size_t>(a)] > pos_total[static_cast<std::size_t>(b)];
    });
    const std::size_t k = order_.size();
    suffix_.assign((k + 1) * static_cast<std::size_t>(ncols_), Num(0));
    for (std::size_t i = k; i-- > 0;)
      for (int c = 0; c < ncols_; ++c) {
        const Num& w = weights_[idx(order_[i], c)];
        suffix_[i * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(c)] =
            suffix_[(i + 1) * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(c)] + (w > 0 ? w : Num(0));
      }
    colsum_.assign((k + 1) * static_cast<std::size_t>(ncols_), Num(0));
  }

  void run() {
    if (order_.empty()) return;
    dfs(0, 0, ~LineMask{0} & all_columns(), 0);
  }

  bool found() const { return have_best_; }
  bool exact() const { return !exhausted_; }
  const Num& best() const { return best_; }
  // Upper bound over subtrees skipped after the budget ran out.
  const std::optional<Num>& skipped_bound() const { return skipped_; }
  LineMask best_rows() const { return best_rows_; }
  LineMask best_cols() const { return best_cols_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r * ncols_ + c); }
  LineMask all_columns() const { return ncols_ == 64 ? ~LineMask{0} : line_bit(ncols_) - 1; }
  Num* sums(std::size_t depth) { return &colsum_[depth * static_cast<std::size_t>(ncols_)]; }

  void dfs(std::size_t start, LineMask rows, LineMask cols, std::size_t depth) {
    const Num* parent = sums(depth);
    Num* child = sums(depth + 1);
    for (std::size_t i = start; i < order_.size(); ++i) {
      const int r = order_[i];
      const LineMask a2 = cols & region_.admissible(r);
      if (!a2) continue;
      Num bound(0);
      const Num* suf = &suffix_[(i + 1) * static_cast<std::size_t>(ncols_)];
      for (LineMask s = a2; s; s &= s - 1) {
        const int c = std::countr_zero(s);
        child[c] = parent[c] + weights_[idx(r, c)];
        const Num t = child[c] + suf[c];
        if (t > 0) bound += t;
      }
      if (have_best_ && bound <= best_) continue;
      if (exhausted_ || nodes_ >= opts_.node_budget) {
        exhausted_ = true;
        if (!skipped_ || bound > *skipped_) skipped_ = bound;
        continue;
      }
      ++nodes_;
      evaluate(rows | line_bit(r), a2, child);
      if (i + 1 < order_.size()) dfs(i + 1, rows | line_bit(r), a2, depth + 1);
    }
  }

  void offer(const Num& v, LineMask rows, LineMask cols) {
    if (!have_best_ || v > best_) {
      have_best_ = true;
      best_ = v;
      best_rows_ = rows;
      best_cols_ = cols;
    }
  }

  Num penalty(const std::vector<const Pair*>& rel, LineMask chosen) const {
    Num p(0);
    std::vector<int> hit;
    for (const Pair* q : rel)
      if ((q->cols & ~chosen) == 0 && std::find(hit.begin(), hit.end(), q->group) == hit.end()) {
        hit.push_back(q->group);
        p += group_z_[static_cast<std::size_t>(q->group)];
      }
    return p;
  }

  void evaluate(LineMask rows, LineMask cols, const Num* colsum) {
    LineMask positive = 0;
    Num pos_sum(0);
    for (LineMask s = cols; s; s &= s - 1) {
      const int c = std::countr_zero(s);
      if (colsum[c] > 0) {
        positive |= line_bit(c);
        pos_sum += colsum[c];
      }
    }
    std::vector<const Pair*> rel;
    for (const auto& p : pairs_)
      if ((p.rows & ~rows) == 0 && (p.cols & ~cols) == 0) rel.push_back(&p);
    if (positive && have_best_ && pos_sum <= best_) return;
    if (rel.empty()) {
      if (positive) {
        offer(pos_sum, rows, positive);
      } else {
        for (LineMask s = cols; s; s &= s - 1) {
          const int c = std::countr_zero(s);
          offer(colsum[c], rows, line_bit(c));
        }
      }
      return;
    }
    if (positive) {
      // positive columns outside every relevant pair never change the
      // penalty, so they are always taken; only the others are branched on
      LineMask touched = 0;
      for (const Pair* q : rel) touched |= q->cols;
      const LineMask fixed = positive & ~touched;
      Num base(0);
      for (LineMask s = fixed; s; s &= s - 1) base += colsum[std::countr_zero(s)];
      std::vector<int> pcols = lines_of(positive & touched);
      std::stable_sort(pcols.begin(), pcols.end(), [&](int a, int b) { return colsum[a] > colsum[b]; });
      std::vector<Num> rest(pcols.size() + 1, Num(0));
      for (std::size_t j = pcols.size(); j-- > 0;) rest[j] = rest[j + 1] + colsum[pcols[j]];
      // a pair is completed by the last of its columns in branching order
      std::vector<std::vector<const Pair*>> touching(pcols.size());
      for (const Pair* q : rel) {
        if ((q->cols & ~positive) != 0) continue;
        std::size_t last = 0;
        for (std::size_t t = 0; t < pcols.size(); ++t)
          if (q->cols & line_bit(pcols[t])) last = t;
        touching[last].push_back(q);
      }
      inner(rows, pcols, rest, colsum, touching, 0, fixed, base, Num(0));
    }
    for (LineMask s = cols & ~positive; s; s &= s - 1) {
      const int c = std::countr_zero(s);
      offer(colsum[c] + penalty(rel, line_bit(c)), rows, line_bit(c));
    }
  }

  // Branch over the pair-touching positive columns, keeping the penalty
  // incrementally: hits_[g] counts completed pairs of group g.
  void inner(LineMask rows, const std::vector<int>& pcols, const std::vector<Num>& rest, const Num* colsum,
             const std::vector<std::vector<const Pair*>>& touching, std::size_t j, LineMask chosen, const Num& sum,
             const Num& pen) {
    if (have_best_ && sum + rest[j] + pen <= best_) return;
    if (j == pcols.size()) {
      if (chosen) offer(sum + pen, rows, chosen);
      return;
    }
    const int c = pcols[j];
    const LineMask with = chosen | line_bit(c);
    Num pen2 = pen;
    for (const Pair* q : touching[j])
      if ((q->cols & ~with) == 0 && hits_[static_cast<std::size_t>(q->group)]++ == 0)
        pen2 += group_z_[static_cast<std::size_t>(q->group)];
    inner(rows, pcols, rest, colsum, touching, j + 1, with, sum + colsum[c], pen2);
    for (const Pair* q : touching[j])
      if ((q->cols & ~with) == 0) --hits_[static_cast<std::size_t>(q->group)];
    inner(rows, pcols, rest, colsum, touching, j + 1, chosen, sum, pen);
  }

  ColorRegion region_;
  int nrows_, ncols_;
  OracleOptions opts_;
  std::vector<Num> weights_;
  std::vector<Num> group_z_;
  std::vector<Pair> pairs_;
  std::vector<int> hits_;
  std::vector<int> order_;
  std::vector<Num> suffix_;
  std::vector<Num> colsum_;
  bool have_best_ = false;
  Num best_{0};
  LineMask best_rows_ = 0, best_cols_ = 0;
  bool exhausted_ = false;
  std::optional<Num> skipped_;
  std::uint64_t nodes_ = 0;
};

template <class Num>
OracleResult run_oracle(const CommMatrix& m, const RectLinearForm& f, int color, const mpz_class& scale,
                        const OracleOptions& opts) {
  OracleSearch<Num> s(m, f, color, scale, opts);
  s.run();
  OracleResult out;
  out.nodes = s.nodes();
  if (!s.found()) {
    out.exact = s.exact();
    if (s.skipped_bound()) {
      out.upper = Rational(mpq_class(from_num(*s.skipped_bound()), scale));
      out.value = out.upper;
    }
    return out;
  }
  out.found = true;
  out.rect = Rect{s.best_rows(), s.best_cols(), color};
  out.value = Rational(mpq_class(from_num(s.best()), scale));
  out.exact = s.exact();
  out.upper = out.value;
  if (s.skipped_bound()) {
    const Rational skipped(mpq_class(from_num(*s.skipped_bound()), scale));
    if (skipped > out.upper) out.upper = skipped;
  }
  return out;
}

}  // namespace detail

// Maximum of the form over all monochromatic rectangles of `color`. Ties go
// to the first maximizer in search order.
inline OracleResult max_linear_form(const CommMatrix& m, const RectLinearForm& form, int color,
                                    const OracleOptions& opts = {}) {
  require_rect_capacity(m);
  require(static_cast<int>(form.weights.size()) == m.num_cells(), "max_linear_form: weight vector size mismatch");
  require(color >= 1 && color <= m.arity(), "max_linear_form: color out of range");
  for (const auto& g : form.groups) {
    require(g.z.sign() <= 0, "max_linear_form: penalty multipliers must be <= 0");
    for (const auto& p : g.pairs) require(m.valid(p.a) && m.valid(p.b), "max_linear_form: pair cell outside matrix");
  }
  const mpz_class scale = detail::lcm_denominators(form);
  // int64 is safe when the absolute sum of all scaled terms stays below 2^62
  mpz_class total = 0;
  for (const auto& w : form.weights) total += abs(mpz_class(w.raw() * scale));
  for (const auto& g : form.groups) total += abs(mpz_class(g.z.raw() * scale));
  if (total < (mpz_class(1) << 62)) return detail::run_oracle<std::int64_t>(m, form, color, scale, opts);
  return detail::run_oracle<mpz_class>(m, form, color, scale, opts);
}

// Per-color maxima, colors 1..n in order (entries with found == false have
// no admissible cell).
inline std::vector<OracleResult> max_linear_form_all(const CommMatrix& m, const RectLinearForm& form,
                                                     const OracleOptions& opts = {}) {
  std::vector<OracleResult> out;
  for (int color = 1; color <= m.arity(); ++color) out.push_back(max_linear_form(m, form, color, opts));
  return out;
}

}  // namespace kwb
