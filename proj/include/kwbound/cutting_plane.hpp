#pragma once

// The rectangle LP (optionally with clique and rank rows) solved exactly by
// column generation.
//
// Primal:  min sum_r x_r  s.t.  sum_{r contains c} x_r = 1   for every cell c,
//                               sum_{r in group g} x_r <= rhs_g  (1 for a
//                               clique, alpha for a rank group),  x >= 0.
// The restricted master starts from every 1x1 rectangle plus the group
// slacks (an identity basis, so no phase one is needed). After each exact
// solve the row duals are handed to the separation oracle as cell weights
// and group multipliers; every rectangle of value > 1 enters as a new
// column. When no color has such a rectangle, the duals form a feasible
// dual certificate whose objective equals the restricted primal objective,
// so the value is the LP optimum over the whole implicit family.
//
// Under a budget the loop stops early and reports the interval
// [dual objective / max rectangle value, restricted primal objective].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kwbound/certificate.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"
#include "kwbound/float_guide.hpp"
#include "kwbound/interior_point.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/rect.hpp"
#include "kwbound/rect_oracle.hpp"
#include "kwbound/simplex.hpp"

namespace kwb {

struct BoundOptions {
  OracleOptions oracle;
  std::uint64_t max_rounds = 1'000'000;
  std::uint64_t max_pivots = 50'000'000;
  double time_limit_s = 0;  // 0: none
  bool dantzig_pricing = true;  // with Bland fallback on degenerate runs
  // Let a floating-point tableau propose each restricted-master basis; the
  // proposal is accepted only after an exact rational check, otherwise the
  // exact simplex takes over from it.
  bool float_guide = true;
};

struct BoundResult {
  Rational value;            // the LP optimum when final; else the upper end
  bool final = true;
  Rational lower, upper;     // certified interval (lower == upper when final)
  DualCertificate certificate;  // dual point achieving `lower` (scaled when not final)
  std::vector<Rect> columns;    // rectangles in the restricted master
  std::uint64_t rounds = 0;
  std::uint64_t pivots = 0;
  std::string note;
};

namespace detail {

inline BoundResult solve_rect_lp(const CommMatrix& m, const std::vector<CliqueSpec>& cliques,
                                 const std::vector<RankSpec>& ranks, const BoundOptions& opts) {
  require_rect_capacity(m);
  const auto start = std::chrono::steady_clock::now();
  const int cells = m.num_cells();
  const int groups = static_cast<int>(cliques.size() + ranks.size());
  std::vector<PenaltyGroup> group_defs;
  std::vector<mpq_class> rhs(static_cast<std::size_t>(cells), mpq_class(1));
  for (const auto& q : cliques) {
    group_defs.push_back({q.pairs, Rational(0)});
    rhs.push_back(1);
  }
  for (const auto& g : ranks) {
    group_defs.push_back({g.pairs, Rational(0)});
    rhs.push_back(g.alpha);
  }
  const int rows = cells + groups;
  RevisedSimplex rs(rows, rhs);
  FloatTableau ft(rows, rhs);
  // FloatSimplex proposes bases for exact confirmation; when it stalls the
  // interior point method takes over pricing; Exact is plain rational pivoting.
  enum class Engine { FloatSimplex, InteriorPoint, Exact };
  Engine engine = opts.float_guide ? Engine::FloatSimplex : Engine::Exact;
  std::vector<std::vector<std::pair<int, double>>> fcols;
  std::vector<double> fb;
  for (const auto& v : rhs) fb.push_back(v.get_d());
  std::vector<Rect> columns;
  std::set<std::pair<LineMask, LineMask>> known;
  auto add_rect = [&](const Rect& r) {
    SparseColumn col;
    for (int row : lines_of(r.rows))
      for (int c : lines_of(r.cols)) col.push_back({m.ref(row, c).serial - 1, mpq_class(1)});
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int g = 0; g < groups; ++g)
      if (group_contains(m, group_defs[static_cast<std::size_t>(g)], r)) col.push_back({cells + g, mpq_class(1)});
    known.insert({r.rows, r.cols});
    columns.push_back(r);
    ft.add_column(col, 1.0);
    fcols.push_back({});
    for (const auto& [i, v] : col) fcols.back().push_back({i, v.get_d()});
    return rs.add_column(std::move(col), 1);
  };
  std::vector<int> basis;
  for (int r = 0; r < m.num_rows(); ++r)
    for (int c = 0; c < m.num_cols(); ++c)
      basis.push_back(add_rect(Rect{line_bit(r), line_bit(c), std::countr_zero(m.cell(r, c)) + 1}));
  for (int g = 0; g < groups; ++g) {
    basis.push_back(rs.add_column({{cells + g, mpq_class(1)}}, 0));
    ft.add_column({{cells + g, mpq_class(1)}}, 0.0);
    fcols.push_back({{cells + g, 1.0}});
  }
  rs.set_unit_basis(basis);
  ft.set_unit_basis(basis);

  // Exact check of a proposed basis: primal values and duals from two sparse
  // rational solves, then every reduced cost. Fills y and the objective.
  auto confirm = [&](const std::vector<int>& head, std::vector<mpq_class>& y, mpq_class& primal) {
    std::vector<SparseRow> bx(static_cast<std::size_t>(rows)), rx(static_cast<std::size_t>(rows));
    std::vector<SparseRow> by(static_cast<std::size_t>(rows)), ry(static_cast<std::size_t>(rows));
    for (int t = 0; t < rows; ++t) {
      const int j = head[static_cast<std::size_t>(t)];
      for (const auto& [i, v] : rs.column(j)) {
        bx[static_cast<std::size_t>(i)][t] = v;
        by[static_cast<std::size_t>(t)][i] = v;
      }
      if (sgn(rs.cost(j)) != 0) ry[static_cast<std::size_t>(t)][0] = rs.cost(j);
    }
    for (int i = 0; i < rows; ++i) rx[static_cast<std::size_t>(i)][0] = rhs[static_cast<std::size_t>(i)];
    const auto x = sparse_solve(std::move(bx), std::move(rx));
    if (!x) return false;
    primal = 0;
    for (int t = 0; t < rows; ++t) {
      const auto& xt = (*x)[static_cast<std::size_t>(t)];
      if (xt.empty()) continue;
      if (sgn(xt.begin()->second) < 0) return false;
      primal += rs.cost(head[static_cast<std::size_t>(t)]) * xt.begin()->second;
    }
    const auto yy = sparse_solve(std::move(by), std::move(ry));
    if (!yy) return false;
    y.assign(static_cast<std::size_t>(rows), mpq_class(0));
    for (int i = 0; i < rows; ++i)
      if (!(*yy)[static_cast<std::size_t>(i)].empty()) y[static_cast<std::size_t>(i)] = (*yy)[static_cast<std::size_t>(i)].begin()->second;
    for (int j = 0; j < rs.num_columns(); ++j) {
      mpq_class d = rs.cost(j);
      for (const auto& [i, v] : rs.column(j)) d -= y[static_cast<std::size_t>(i)] * v;
      if (sgn(d) < 0) return false;
    }
    return true;
  };
  rs.set_dantzig_pricing(opts.dantzig_pricing);

  auto certificate_from = [&](const std::vector<mpq_class>& y, const mpq_class& scale) {
    DualCertificate cert = DualCertificate::zero(m, m.provenance());
    for (int i = 0; i < cells; ++i) cert.weights[static_cast<std::size_t>(i)] = Rational(y[static_cast<std::size_t>(i)] / scale);
    for (std::size_t q = 0; q < cliques.size(); ++q)
      cert.cliques.push_back({cliques[q].pairs, Rational(y[static_cast<std::size_t>(cells) + q] / scale)});
    for (std::size_t g = 0; g < ranks.size(); ++g)
      cert.ranks.push_back({ranks[g].pairs, ranks[g].alpha, ranks[g].witness,
                            Rational(y[static_cast<std::size_t>(cells) + cliques.size() + g] / scale)});
    cert.objective = certificate_objective(cert);
    return cert;
  };

  auto zero_certificate = [&] {
    DualCertificate cert = DualCertificate::zero(m, m.provenance());
    for (const auto& q : cliques) cert.cliques.push_back({q.pairs, Rational(0)});
    for (const auto& g : ranks) cert.ranks.push_back({g.pairs, g.alpha, g.witness, Rational(0)});
    return cert;
  };

  struct Separation {
    bool groups_ok = true;
    bool exact = true;
    Rational max_value{0};
    std::vector<Rect> violators;
  };
  // Oracle pass over every color with the given duals; a rectangle is a
  // violator when its value exceeds `threshold`.
  auto separate = [&](const std::vector<mpq_class>& y, const Rational& threshold) {
    Separation s;
    for (int g = 0; g < groups; ++g) s.groups_ok = s.groups_ok && sgn(y[static_cast<std::size_t>(cells + g)]) <= 0;
    RectLinearForm form = RectLinearForm::zero(m);
    for (int i = 0; i < cells; ++i) form.weights[static_cast<std::size_t>(i)] = Rational(y[static_cast<std::size_t>(i)]);
    for (int g = 0; g < groups; ++g) {
      group_defs[static_cast<std::size_t>(g)].z = s.groups_ok ? Rational(y[static_cast<std::size_t>(cells + g)]) : Rational(0);
      form.groups.push_back(group_defs[static_cast<std::size_t>(g)]);
    }
    for (int color = 1; color <= m.arity(); ++color) {
      const OracleResult o = max_linear_form(m, form, color, opts.oracle);
      if (!o.exact) s.exact = false;
      if (o.found && o.value > threshold && !known.contains({o.rect.rows, o.rect.cols})) s.violators.push_back(o.rect);
      const Rational& top = o.exact ? o.value : o.upper;
      if ((o.found || !o.exact) && top > s.max_value) s.max_value = top;
    }
    return s;
  };
  // Float duals rounded to multiples of 2^-24: small exact rationals that
  // keep the oracle on its machine-integer path.
  auto rounded_duals = [&](const std::vector<double>& yf) {
    std::vector<mpq_class> y;
    for (std::size_t i = 0; i < yf.size(); ++i) {
      const double v = static_cast<int>(i) >= cells ? std::min(yf[i], 0.0) : yf[i];
      mpq_class q(static_cast<long>(std::llround(std::ldexp(v, 24))), 1L << 24);
      q.canonicalize();
      y.push_back(q);
    }
    return y;
  };
  const auto float_pivot_cap = std::min<std::uint64_t>(opts.max_pivots, 100 * static_cast<std::uint64_t>(rows) + 10'000);
  const auto deadline = opts.time_limit_s > 0
                            ? start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                          std::chrono::duration<double>(opts.time_limit_s))
                            : std::chrono::steady_clock::time_point::max();
  auto dual_objective = [&](const std::vector<mpq_class>& y) {
    mpq_class v = 0;
    for (int i = 0; i < rows; ++i) v += rhs[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    return v;
  };
  const Rational float_threshold = Rational(1) + Rational(1, 1'000'000);

  // Round an interior solution to fractions of bounded denominator; accept
  // when the duals are exactly feasible (oracle maximum <= 1), the primal
  // satisfies the restricted master exactly, and the two objectives agree.
  auto snap = [&](const InteriorPointResult& ip, std::vector<mpq_class>& y, mpq_class& primal) {
    for (long den : {12L, 360L, 5040L, 720720L}) {
      std::vector<mpq_class> yd;
      for (std::size_t i = 0; i < ip.y.size(); ++i) {
        mpq_class q = limit_denominator(mpq_class(ip.y[i]), den);
        if (static_cast<int>(i) >= cells && sgn(q) > 0) q = 0;
        yd.push_back(q);
      }
      std::vector<mpq_class> lhs(static_cast<std::size_t>(rows), mpq_class(0));
      mpq_class px = 0;
      bool ok = true;  // primal feasibility of the rounded x
      for (std::size_t j = 0; j < ip.x.size(); ++j) {
        const int col = static_cast<int>(j);
        if (sgn(rs.cost(col)) == 0) continue;  // group slack
        const mpq_class q = limit_denominator(mpq_class(std::max(ip.x[j], 0.0)), den);
        if (sgn(q) == 0) continue;
        for (const auto& [i, v] : rs.column(col)) lhs[static_cast<std::size_t>(i)] += v * q;
        px += rs.cost(col) * q;
      }
      for (int i = 0; i < rows && ok; ++i) {
        const int cmp = ::cmp(lhs[static_cast<std::size_t>(i)], rhs[static_cast<std::size_t>(i)]);
        // cell rows are equalities; group rows carry their own slack column
        ok = i < cells ? cmp == 0 : cmp <= 0;
      }
      if (!ok || px != dual_objective(yd)) continue;
      const Separation s = separate(yd, Rational(1));
      if (!s.exact || !s.groups_ok || s.max_value > 1) continue;
      y = std::move(yd);
      primal = px;
      return true;
    }
    return false;
  };

  BoundResult res;
  int restarts = 0;
  for (;;) {
    const bool out_of_time =
        opts.time_limit_s > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > opts.time_limit_s;
    const bool out_of_rounds = out_of_time || res.rounds + 1 >= opts.max_rounds;
    std::vector<mpq_class> y;
    mpq_class primal;
    bool pivot_limit = false;
    bool solved = false;
    if (engine == Engine::InteriorPoint) {
      std::vector<double> fcost(fcols.size(), 1.0);
      for (int g = 0; g < groups; ++g) fcost[static_cast<std::size_t>(basis[static_cast<std::size_t>(cells + g)])] = 0.0;
      const InteriorPointResult ip = interior_point(rows, fb, fcols, fcost);
      const std::vector<mpq_class> yr = rounded_duals(ip.y);
      if (!out_of_rounds) {
        const Separation s = separate(yr, float_threshold);
        if (!s.violators.empty()) {
          ++res.rounds;
          for (const auto& r : s.violators) add_rect(r);
          continue;
        }
      }
      // priced out: first try reading an exact optimum off the interior
      // point by rounding to small denominators
      if (!out_of_rounds && snap(ip, y, primal)) {
        solved = true;
      }
      // then look for an exact optimal basis of the final master
      if (!solved) ft.reperturb(1e-7, static_cast<std::uint32_t>(++restarts));
      if (!solved) ft.set_unit_basis(basis);
      res.pivots = ft.pivots();
      if (solved || (ft.optimize(float_pivot_cap) == FloatTableau::Status::Optimal && confirm(ft.basis(), y, primal))) {
        solved = true;
      } else {
        // no exact basis: the rounded interior duals, scaled by the exact
        // oracle maximum, still certify a lower bound
        const Separation s = separate(yr, Rational(1));
        ++res.rounds;
        res.columns = columns;
        res.final = false;
        res.upper = Rational(mpq_class(ip.primal));
        res.value = res.upper;
        const mpq_class dual_obj = dual_objective(yr);
        if (sgn(dual_obj) > 0) {
          res.certificate = certificate_from(yr, s.max_value > 1 ? s.max_value.raw() : mpq_class(1));
          res.lower = res.certificate.objective;
        } else {
          res.certificate = zero_certificate();
          res.lower = Rational(0);
        }
        res.note = out_of_rounds ? (out_of_time ? "time budget exhausted" : "round budget exhausted")
                                 : "no exact optimal basis found; upper end is a floating-point estimate";
        return res;
      }
    }
    if (engine == Engine::FloatSimplex) {
      const bool stalled = ft.optimize(float_pivot_cap) != FloatTableau::Status::Optimal;
      res.pivots = ft.pivots();
      if (stalled && !out_of_rounds) {
        // degenerate stall: retry once from the unit basis, then switch to
        // interior point pricing
        if (restarts++ == 0) {
          ft.reperturb(1e-7, static_cast<std::uint32_t>(restarts));
          ft.set_unit_basis(basis);
        } else {
          engine = Engine::InteriorPoint;
        }
        continue;
      }
      if (!stalled && !out_of_rounds) {
        // cheap round: separate with the float duals, confirm nothing yet
        const Separation s = separate(rounded_duals(ft.duals()), float_threshold);
        if (!s.violators.empty()) {
          ++res.rounds;
          for (const auto& r : s.violators) add_rect(r);
          continue;
        }
      }
      if (!stalled && confirm(ft.basis(), y, primal)) {
        solved = true;
      } else {
        // hand over to the exact simplex, from the proposal when it is usable
        engine = Engine::Exact;
        rs.set_basis(ft.basis());
        if (out_of_rounds) {
          y = rs.duals();
          primal = rs.objective();
          solved = true;
        }
      }
    }
    if (!solved) {
      const auto status = rs.optimize(opts.max_pivots, deadline);
      if (status == RevisedSimplex::Status::Unbounded) throw std::logic_error("rectangle LP: unbounded restricted master");
      pivot_limit = status == RevisedSimplex::Status::IterationLimit;
      y = rs.duals();
      primal = rs.objective();
      res.pivots = ft.pivots() + rs.pivots();
    }
    const Separation s = separate(y, Rational(1));
    ++res.rounds;
    const mpq_class dual_obj = dual_objective(y);
    const bool stop = s.violators.empty() || pivot_limit || res.rounds >= opts.max_rounds || out_of_time;
    if (stop) {
      res.columns = columns;
      res.upper = Rational(primal);
      if (s.violators.empty() && s.exact && !pivot_limit && s.groups_ok) {
        res.final = true;
        res.value = res.upper;
        res.lower = res.upper;
        res.certificate = certificate_from(y, 1);
        return res;
      }
      res.final = false;
      res.value = res.upper;
      // scaled duals stay feasible: every rectangle sum divided by max_value is <= 1
      if (s.groups_ok && sgn(dual_obj) > 0) {
        const mpq_class scale = s.max_value > 1 ? s.max_value.raw() : mpq_class(1);
        res.certificate = certificate_from(y, scale);
        res.lower = res.certificate.objective;
      } else {
        res.certificate = zero_certificate();
        res.lower = Rational(0);
      }
      const bool late = std::chrono::steady_clock::now() > deadline;
      res.note = late ? "time budget exhausted"
                 : pivot_limit ? "pivot budget exhausted"
                 : !s.exact ? "oracle budget exhausted"
                            : "round budget exhausted";
      return res;
    }
    for (const auto& r : s.violators) add_rect(r);
  }
}

}  // namespace detail

inline BoundResult lp_bound(const CommMatrix& m, const BoundOptions& opts = {}) {
  return detail::solve_rect_lp(m, {}, {}, opts);
}

inline BoundResult strengthened_bound(const CommMatrix& m, const std::vector<CliqueSpec>& cliques,
                                      const std::vector<RankSpec>& ranks, const BoundOptions& opts = {}) {
  for (std::size_t i = 0; i < cliques.size(); ++i)
    if (auto e = validate_clique(m, cliques[i]); !e.empty())
      throw InvalidInput("strengthened_bound: clique " + std::to_string(i + 1) + ": " + e.front());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (auto e = validate_rank(m, ranks[i]); !e.empty())
      throw InvalidInput("strengthened_bound: rank " + std::to_string(i + 1) + ": " + e.front());
  return detail::solve_rect_lp(m, cliques, ranks, opts);
}

}  // namespace kwb
