#pragma once

// Exact rational simplex.
//
// RevisedSimplex works on the standard form  min c.x  s.t.  A x = b, x >= 0
// with b >= 0, starting from a basis of unit columns. It keeps an explicit
// dense basis inverse in GMP rationals, prices with Bland's rule (lowest
// eligible column index enters, lowest basic column index leaves among ratio
// ties) and supports appending columns between solves, which is what the
// rectangle-LP column generation needs.
//
// simplex_solve() handles a general LinearProgram (variable signs, <=, =, >=
// rows, min or max) with a two-phase method on top of RevisedSimplex and
// checks primal feasibility, dual feasibility and a zero duality gap before
// returning.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kwbound/error.hpp"
#include "kwbound/rational.hpp"

namespace kwb {

using SparseColumn = std::vector<std::pair<int, mpq_class>>;

// Exact solve of a square sparse system M X = R by Gaussian elimination,
// pivoting on the sparsest remaining row and, within it, the column with the
// fewest remaining entries. rows[i] maps column -> M[i][col]; rhs[i] maps
// right-hand-side index -> R[i][k]. Returns X as one sparse map per unknown,
// or nullopt when M is singular.
using SparseRow = std::map<int, mpq_class>;

inline std::optional<std::vector<SparseRow>> sparse_solve(std::vector<SparseRow> rows, std::vector<SparseRow> rhs) {
  const std::size_t n = rows.size();
  require(rhs.size() == n, "sparse_solve: rhs size mismatch");
  std::vector<std::set<int>> col_rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, v] : rows[i]) {
      require(j >= 0 && static_cast<std::size_t>(j) < n, "sparse_solve: column out of range");
      col_rows[static_cast<std::size_t>(j)].insert(static_cast<int>(i));
    }
  auto axpy = [](SparseRow& dst, const SparseRow& src, const mpq_class& f, auto on_change) {
    for (const auto& [j, v] : src) {
      auto [it, fresh] = dst.try_emplace(j, 0);
      it->second -= f * v;
      if (sgn(it->second) == 0) {
        dst.erase(it);
        on_change(j, false);
      } else if (fresh) {
        on_change(j, true);
      }
    }
  };
  std::vector<char> done(n, 0);
  std::vector<std::pair<int, int>> order;  // (row, column) pivots
  for (std::size_t step = 0; step < n; ++step) {
    int pr = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && (pr < 0 || rows[i].size() < rows[static_cast<std::size_t>(pr)].size())) pr = static_cast<int>(i);
    const SparseRow& prow = rows[static_cast<std::size_t>(pr)];
    if (prow.empty()) return std::nullopt;
    int pc = -1;
    for (const auto& [j, v] : prow)
      if (pc < 0 || col_rows[static_cast<std::size_t>(j)].size() < col_rows[static_cast<std::size_t>(pc)].size()) pc = j;
    done[static_cast<std::size_t>(pr)] = 1;
    order.push_back({pr, pc});
    const mpq_class piv = prow.at(pc);
    const std::vector<int> targets(col_rows[static_cast<std::size_t>(pc)].begin(), col_rows[static_cast<std::size_t>(pc)].end());
    for (int k : targets) {
      if (k == pr) continue;
      auto& row = rows[static_cast<std::size_t>(k)];
      const mpq_class f = row.at(pc) / piv;
      axpy(row, prow, f, [&](int j, bool added) {
        if (added) col_rows[static_cast<std::size_t>(j)].insert(k);
        else col_rows[static_cast<std::size_t>(j)].erase(k);
      });
      axpy(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(pr)], f, [](int, bool) {});
    }
    // the pivot row leaves the active set
    for (const auto& [j, v] : prow) col_rows[static_cast<std::size_t>(j)].erase(pr);
  }
  std::vector<SparseRow> x(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto [r, c] = *it;
    const SparseRow& row = rows[static_cast<std::size_t>(r)];
    SparseRow val = rhs[static_cast<std::size_t>(r)];
    for (const auto& [j, v] : row)
      if (j != c) axpy(val, x[static_cast<std::size_t>(j)], v, [](int, bool) {});
    const mpq_class piv = row.at(c);
    for (auto& [k, v] : val) v /= piv;
    x[static_cast<std::size_t>(c)] = std::move(val);
  }
  return x;
}

class RevisedSimplex {
 public:
  enum class Status { Optimal, Unbounded, IterationLimit };

  RevisedSimplex(int rows, std::vector<mpq_class> rhs) : m_(rows), b_(std::move(rhs)) {
    require(static_cast<int>(b_.size()) == m_, "RevisedSimplex: rhs size mismatch");
    for (const auto& v : b_) require(sgn(v) >= 0, "RevisedSimplex: rhs must be nonnegative");
  }

  int num_rows() const { return m_; }
  int num_columns() const { return static_cast<int>(cols_.size()); }

  int add_column(SparseColumn entries, mpq_class cost, bool can_enter = true) {
    for (const auto& [i, v] : entries) require(i >= 0 && i < m_, "RevisedSimplex: row index out of range");
    cols_.push_back(Column{std::move(entries), std::move(cost), can_enter});
    basic_row_.push_back(-1);
    return num_columns() - 1;
  }

  void set_cost(int j, mpq_class cost) { cols_[static_cast<std::size_t>(j)].cost = std::move(cost); }
  void set_can_enter(int j, bool v) { cols_[static_cast<std::size_t>(j)].can_enter = v; }
  const mpq_class& cost(int j) const { return cols_[static_cast<std::size_t>(j)].cost; }
  const SparseColumn& column(int j) const { return cols_[static_cast<std::size_t>(j)].entries; }

  // `basis[i]` must be a column equal to the i-th unit vector.
  void set_unit_basis(const std::vector<int>& basis) {
    require(static_cast<int>(basis.size()) == m_, "RevisedSimplex: basis size mismatch");
    head_ = basis;
    std::fill(basic_row_.begin(), basic_row_.end(), -1);
    for (int i = 0; i < m_; ++i) {
      const auto& e = column(basis[static_cast<std::size_t>(i)]);
      require(e.size() == 1 && e[0].first == i && e[0].second == 1, "RevisedSimplex: basis is not the identity");
      basic_row_[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = i;
    }
    binv_.assign(static_cast<std::size_t>(m_), std::vector<mpq_class>(static_cast<std::size_t>(m_)));
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    xb_ = b_;
    recompute_duals();
  }

  // Installs an arbitrary basis (one column per row, in order) by factoring
  // it exactly. Returns false, leaving the state untouched, when the columns
  // are singular or the basic solution is not primal feasible.
  bool set_basis(const std::vector<int>& basis) {
    require(static_cast<int>(basis.size()) == m_, "RevisedSimplex: basis size mismatch");
    // B X = I, so X = B^{-1}; unknown t is the value for basis position t
    std::vector<SparseRow> rows(static_cast<std::size_t>(m_)), rhs(static_cast<std::size_t>(m_));
    for (int t = 0; t < m_; ++t)
      for (const auto& [i, v] : column(basis[static_cast<std::size_t>(t)])) rows[static_cast<std::size_t>(i)][t] = v;
    for (int i = 0; i < m_; ++i) rhs[static_cast<std::size_t>(i)][i] = 1;
    auto inv = sparse_solve(std::move(rows), std::move(rhs));
    if (!inv) return false;
    std::vector<std::vector<mpq_class>> binv(static_cast<std::size_t>(m_), std::vector<mpq_class>(static_cast<std::size_t>(m_)));
    std::vector<mpq_class> xb(static_cast<std::size_t>(m_));
    for (int t = 0; t < m_; ++t)
      for (const auto& [k, v] : (*inv)[static_cast<std::size_t>(t)]) {
        binv[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = v;
        xb[static_cast<std::size_t>(t)] += v * b_[static_cast<std::size_t>(k)];
      }
    for (const auto& v : xb)
      if (sgn(v) < 0) return false;
    head_ = basis;
    std::fill(basic_row_.begin(), basic_row_.end(), -1);
    for (int t = 0; t < m_; ++t) basic_row_[static_cast<std::size_t>(basis[static_cast<std::size_t>(t)])] = t;
    binv_ = std::move(binv);
    xb_ = std::move(xb);
    recompute_duals();
    return true;
  }

  // y = c_B B^{-1}
  void recompute_duals() {
    y_.assign(static_cast<std::size_t>(m_), mpq_class(0));
    for (int i = 0; i < m_; ++i) {
      const mpq_class& c = cost(head_[static_cast<std::size_t>(i)]);
      if (sgn(c) == 0) continue;
      const auto& row = binv_[static_cast<std::size_t>(i)];
      for (int k = 0; k < m_; ++k)
        if (sgn(row[static_cast<std::size_t>(k)]) != 0) y_[static_cast<std::size_t>(k)] += c * row[static_cast<std::size_t>(k)];
    }
  }

  mpq_class reduced_cost(int j) const {
    mpq_class d = cost(j);
    for (const auto& [i, v] : column(j)) d -= y_[static_cast<std::size_t>(i)] * v;
    return d;
  }

  // Pricing: Bland's rule, or (when enabled) Dantzig's most negative reduced
  // cost that falls back to Bland's rule after a run of degenerate pivots,
  // which keeps the termination guarantee.
  void set_dantzig_pricing(bool on, int degenerate_run = 50) {
    dantzig_ = on;
    degenerate_limit_ = degenerate_run;
  }

  // The deadline (checked every 16 pivots) reports IterationLimit too.
  Status optimize(std::uint64_t max_pivots = UINT64_MAX,
                  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max()) {
    int degenerate = 0;
    for (std::uint64_t step = 0;; ++step) {
      if (step % 16 == 15 && std::chrono::steady_clock::now() > deadline) return Status::IterationLimit;
      int enter = -1;
      const bool bland = !dantzig_ || degenerate >= degenerate_limit_;
      mpq_class most_negative = 0;
      for (int j = 0; j < num_columns(); ++j) {
        if (basic_row_[static_cast<std::size_t>(j)] >= 0 || !cols_[static_cast<std::size_t>(j)].can_enter) continue;
        mpq_class rc = reduced_cost(j);
        if (sgn(rc) >= 0) continue;
        if (bland) { enter = j; break; }
        if (enter < 0 || rc < most_negative) { enter = j; most_negative = std::move(rc); }
      }
      if (enter < 0) return Status::Optimal;
      if (pivots_ >= max_pivots) return Status::IterationLimit;
      const std::vector<mpq_class> d = ftran(enter);
      int leave = -1;
      mpq_class best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (sgn(d[static_cast<std::size_t>(i)]) <= 0) continue;
        mpq_class ratio = xb_[static_cast<std::size_t>(i)] / d[static_cast<std::size_t>(i)];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && head_[static_cast<std::size_t>(i)] < head_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return Status::Unbounded;
      degenerate = sgn(best_ratio) == 0 ? degenerate + 1 : 0;
      pivot(enter, leave, d);
    }
  }

  // B^{-1} a_j
  std::vector<mpq_class> ftran(int j) const {
    std::vector<mpq_class> d(static_cast<std::size_t>(m_));
    for (const auto& [k, v] : column(j))
      for (int i = 0; i < m_; ++i) {
        const mpq_class& e = binv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (sgn(e) != 0) d[static_cast<std::size_t>(i)] += e * v;
      }
    return d;
  }

  // Basis exchange: column `enter` replaces the basic variable of row `leave`.
  void pivot(int enter, int leave, const std::vector<mpq_class>& d) {
    const std::size_t p = static_cast<std::size_t>(leave);
    const mpq_class dp = d[p];
    require(sgn(dp) != 0, "RevisedSimplex: zero pivot");
    const mpq_class rc = reduced_cost(enter);
    auto& prow = binv_[p];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < prow.size(); ++k)
      if (sgn(prow[k]) != 0) nz.push_back(k);
    // duals first (uses the old pivot row)
    const mpq_class ystep = rc / dp;
    if (sgn(ystep) != 0)
      for (auto k : nz) y_[k] += ystep * prow[k];
    for (auto k : nz) prow[k] /= dp;
    const mpq_class theta = xb_[p] / dp;
    for (int i = 0; i < m_; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      if (ii == p || sgn(d[ii]) == 0) continue;
      auto& row = binv_[ii];
      for (auto k : nz) row[k] -= d[ii] * prow[k];
      xb_[ii] -= theta * d[ii];
    }
    xb_[p] = theta;
    basic_row_[static_cast<std::size_t>(head_[p])] = -1;
    head_[p] = enter;
    basic_row_[static_cast<std::size_t>(enter)] = leave;
    ++pivots_;
  }

  bool is_basic(int j) const { return basic_row_[static_cast<std::size_t>(j)] >= 0; }
  int basic_row(int j) const { return basic_row_[static_cast<std::size_t>(j)]; }
  int head(int i) const { return head_[static_cast<std::size_t>(i)]; }
  const std::vector<mpq_class>& duals() const { return y_; }
  const std::vector<mpq_class>& basic_values() const { return xb_; }
  std::uint64_t pivots() const { return pivots_; }

  mpq_class value(int j) const {
    const int r = basic_row(j);
    return r < 0 ? mpq_class(0) : xb_[static_cast<std::size_t>(r)];
  }
  mpq_class objective() const {
    mpq_class v = 0;
    for (int i = 0; i < m_; ++i) v += cost(head_[static_cast<std::size_t>(i)]) * xb_[static_cast<std::size_t>(i)];
    return v;
  }
  // Row of B^{-1}, used to detect redundant rows after phase one.
  const std::vector<mpq_class>& binv_row(int i) const { return binv_[static_cast<std::size_t>(i)]; }

 private:
  struct Column {
    SparseColumn entries;
    mpq_class cost;
    bool can_enter;
  };

  int m_;
  std::vector<mpq_class> b_;
  std::vector<Column> cols_;
  std::vector<int> basic_row_;
  std::vector<int> head_;
  std::vector<std::vector<mpq_class>> binv_;
  std::vector<mpq_class> xb_;
  std::vector<mpq_class> y_;
  std::uint64_t pivots_ = 0;
  bool dantzig_ = false;
  int degenerate_limit_ = 50;
};

// ---------------------------------------------------------------------------
// General linear programs.

enum class VarBound { NonNegative, NonPositive, Free };
enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Minimize, Maximize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(VarBound b) {
  switch (b) {
    case VarBound::NonNegative: return ">=0";
    case VarBound::NonPositive: return "<=0";
    case VarBound::Free: return "free";
  }
  return "?";
}
inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}
inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LinearProgram {
  struct Variable {
    std::string name;
    VarBound bound = VarBound::NonNegative;
    Rational cost;
  };
  struct Constraint {
    std::string name;
    std::vector<std::pair<int, Rational>> terms;
    Relation rel = Relation::LessEq;
    Rational rhs;
  };

  Sense sense = Sense::Minimize;
  std::vector<Variable> vars;
  std::vector<Constraint> constraints;

  int add_var(std::string name, VarBound bound, Rational cost) {
    vars.push_back({std::move(name), bound, std::move(cost)});
    return static_cast<int>(vars.size()) - 1;
  }
  int add_constraint(std::vector<std::pair<int, Rational>> terms, Relation rel, Rational rhs,
                     std::string name = {}) {
    for (const auto& t : terms) require(t.first >= 0 && t.first < static_cast<int>(vars.size()), "LinearProgram: variable index out of range");
    constraints.push_back({std::move(name), std::move(terms), rel, std::move(rhs)});
    return static_cast<int>(constraints.size()) - 1;
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : constraints) n += c.terms.size();
    return n;
  }
};

// Dual values follow the problem's own sense: the dual objective is
// sum_i rhs_i * dual_i. For a minimization, <= rows have dual <= 0 and >=
// rows dual >= 0; for a maximization the signs flip.
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective;
  std::uint64_t pivots = 0;
};

inline constexpr std::size_t kMaxLpNonzeros = 50'000;

// Checks primal feasibility, dual feasibility and equal objectives; returns
// an empty string when all hold, otherwise the first failure.
inline std::string check_optimality(const LinearProgram& lp, const LPSolution& s) {
  if (s.primal.size() != lp.vars.size() || s.dual.size() != lp.constraints.size()) return "dimension mismatch";
  const bool minimize = lp.sense == Sense::Minimize;
  for (std::size_t j = 0; j < lp.vars.size(); ++j) {
    const int sg = s.primal[j].sign();
    if (lp.vars[j].bound == VarBound::NonNegative && sg < 0) return "primal sign violated: " + lp.vars[j].name;
    if (lp.vars[j].bound == VarBound::NonPositive && sg > 0) return "primal sign violated: " + lp.vars[j].name;
  }
  std::vector<Rational> reduced(lp.vars.size());
  for (std::size_t j = 0; j < lp.vars.size(); ++j) reduced[j] = lp.vars[j].cost;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    Rational lhs(0);
    for (const auto& [j, a] : c.terms) {
      lhs += a * s.primal[static_cast<std::size_t>(j)];
      reduced[static_cast<std::size_t>(j)] -= a * s.dual[i];
    }
    if ((c.rel == Relation::LessEq && lhs > c.rhs) || (c.rel == Relation::GreaterEq && lhs < c.rhs) ||
        (c.rel == Relation::Equal && lhs != c.rhs))
      return "primal constraint violated: row " + std::to_string(i);
    const int ys = s.dual[i].sign() * (minimize ? 1 : -1);
    if ((c.rel == Relation::LessEq && ys > 0) || (c.rel == Relation::GreaterEq && ys < 0))
      return "dual sign violated: row " + std::to_string(i);
  }
  for (std::size_t j = 0; j < lp.vars.size(); ++j) {
    const int ds = reduced[j].sign() * (minimize ? 1 : -1);
    if ((lp.vars[j].bound == VarBound::NonNegative && ds < 0) || (lp.vars[j].bound == VarBound::NonPositive && ds > 0) ||
        (lp.vars[j].bound == VarBound::Free && ds != 0))
      return "dual constraint violated: column " + std::to_string(j);
  }
  Rational primal_obj(0), dual_obj(0);
  for (std::size_t j = 0; j < lp.vars.size(); ++j) primal_obj += lp.vars[j].cost * s.primal[j];
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) dual_obj += lp.constraints[i].rhs * s.dual[i];
  if (primal_obj != dual_obj || primal_obj != s.objective) return "duality gap";
  return {};
}

inline LPSolution simplex_solve(const LinearProgram& lp) {
  require(lp.nonzeros() <= kMaxLpNonzeros, "simplex_solve: more than 50000 nonzeros");
  const int m = static_cast<int>(lp.constraints.size());
  const bool maximize = lp.sense == Sense::Maximize;

  // Row signs making every rhs nonnegative.
  std::vector<int> sigma(static_cast<std::size_t>(m), 1);
  std::vector<mpq_class> rhs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[static_cast<std::size_t>(i)];
    if (c.rhs.sign() < 0) sigma[static_cast<std::size_t>(i)] = -1;
    rhs[static_cast<std::size_t>(i)] = c.rhs.raw() * sigma[static_cast<std::size_t>(i)];
  }
  std::vector<SparseColumn> rows_of_var(lp.vars.size());
  for (int i = 0; i < m; ++i)
    for (const auto& [j, a] : lp.constraints[static_cast<std::size_t>(i)].terms)
      if (a.sign() != 0) rows_of_var[static_cast<std::size_t>(j)].push_back({i, a.raw() * sigma[static_cast<std::size_t>(i)]});

  RevisedSimplex rs(m, rhs);
  // structural columns: (variable, sign) pairs
  struct Part { int var; int sign; };
  std::vector<Part> parts;
  std::vector<mpq_class> phase2_cost;
  auto add_part = [&](int j, int sign) {
    SparseColumn col;
    for (const auto& [i, a] : rows_of_var[static_cast<std::size_t>(j)]) col.push_back({i, a * sign});
    mpq_class c = lp.vars[static_cast<std::size_t>(j)].cost.raw() * sign * (maximize ? -1 : 1);
    rs.add_column(std::move(col), 0);
    parts.push_back({j, sign});
    phase2_cost.push_back(c);
  };
  for (int j = 0; j < static_cast<int>(lp.vars.size()); ++j) {
    switch (lp.vars[static_cast<std::size_t>(j)].bound) {
      case VarBound::NonNegative: add_part(j, 1); break;
      case VarBound::NonPositive: add_part(j, -1); break;
      case VarBound::Free: add_part(j, 1); add_part(j, -1); break;
    }
  }
  const int structural = rs.num_columns();
  // slacks; a slack with +1 after the sign flip can start in the basis
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    const auto rel = lp.constraints[static_cast<std::size_t>(i)].rel;
    if (rel == Relation::Equal) continue;
    const int coef = (rel == Relation::LessEq ? 1 : -1) * sigma[static_cast<std::size_t>(i)];
    const int col = rs.add_column({{i, mpq_class(coef)}}, 0);
    phase2_cost.push_back(0);
    if (coef == 1) basis[static_cast<std::size_t>(i)] = col;
  }
  const int first_artificial = rs.num_columns();
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= 0) continue;
    basis[static_cast<std::size_t>(i)] = rs.add_column({{i, mpq_class(1)}}, 1);
  }
  const int total = rs.num_columns();
  LPSolution sol;
  if (m > 0) {
    rs.set_unit_basis(basis);
    rs.optimize();
    if (sgn(rs.objective()) > 0) {
      sol.status = LPStatus::Infeasible;
      sol.pivots = rs.pivots();
      return sol;
    }
    // drive zero-level artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      if (rs.head(i) < first_artificial) continue;
      for (int j = 0; j < first_artificial; ++j) {
        if (rs.is_basic(j)) continue;
        const auto d = rs.ftran(j);
        if (sgn(d[static_cast<std::size_t>(i)]) != 0) {
          rs.pivot(j, i, d);
          break;
        }
      }
    }
    for (int j = first_artificial; j < total; ++j) {
      rs.set_cost(j, 0);
      rs.set_can_enter(j, false);
    }
    for (int j = 0; j < first_artificial; ++j) rs.set_cost(j, phase2_cost[static_cast<std::size_t>(j)]);
    rs.recompute_duals();
    if (rs.optimize() == RevisedSimplex::Status::Unbounded) {
      sol.status = LPStatus::Unbounded;
      sol.pivots = rs.pivots();
      return sol;
    }
  } else {
    // no constraints: optimal at zero unless some direction improves
    for (int j = 0; j < structural; ++j)
      if (sgn(phase2_cost[static_cast<std::size_t>(j)]) < 0) {
        sol.status = LPStatus::Unbounded;
        return sol;
      }
  }
  sol.status = LPStatus::Optimal;
  sol.pivots = rs.pivots();
  sol.primal.assign(lp.vars.size(), Rational(0));
  for (int k = 0; k < structural; ++k) {
    const auto& p = parts[static_cast<std::size_t>(k)];
    sol.primal[static_cast<std::size_t>(p.var)] += Rational(rs.value(k) * p.sign);
  }
  sol.dual.assign(static_cast<std::size_t>(m), Rational(0));
  if (m > 0)
    for (int i = 0; i < m; ++i)
      sol.dual[static_cast<std::size_t>(i)] =
          Rational(rs.duals()[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)] * (maximize ? -1 : 1));
  Rational obj(0);
  for (std::size_t j = 0; j < lp.vars.size(); ++j) obj += lp.vars[j].cost * sol.primal[j];
  sol.objective = obj;
  if (const std::string err = check_optimality(lp, sol); !err.empty())
    throw std::logic_error("simplex_solve: optimality check failed: " + err);
  return sol;
}

}  // namespace kwb
