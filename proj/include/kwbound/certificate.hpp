#pragma once

// Dual certificates for the rectangle LP with clique and rank constraints,
// and their exact verification.
//
// Dual:  max sum_c w_c + sum_q z_q + sum_g alpha(g) z_g
//        s.t. for every monochromatic rectangle r:
//             sum_{c in r} w_c + sum_{q contains r} z_q + sum_{g contains r} z_g <= 1,
//        z <= 0.
// A group (clique or rank) contains r when r contains both cells of at least
// one of its generator pairs.
//
// A clique is valid when every two generator pairs share a row and a column
// (so all member rectangles pairwise intersect). A rank group is valid with
// claimed alpha when every generator pair's spanned rectangle holds two
// witness cells: pairwise-disjoint members use disjoint witness pairs, so at
// most floor(|witness| / 2) of them can be chosen, and any claimed alpha at
// or above that bound gives a valid constraint.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/rect.hpp"
#include "kwbound/rect_oracle.hpp"
#include "kwbound/stable_set.hpp"

namespace kwb {

struct CliqueSpec {
  std::vector<CellPair> pairs;
  Rational z;
};

struct RankSpec {
  std::vector<CellPair> pairs;
  int alpha = 0;
  std::vector<CellRef> witness;
  Rational z;
};

struct DualCertificate {
  std::string matrix_id;
  std::vector<Rational> weights;  // indexed by serial - 1
  std::vector<CliqueSpec> cliques;
  std::vector<RankSpec> ranks;
  Rational objective;  // declared

  static DualCertificate zero(const CommMatrix& m, std::string id = {}) {
    DualCertificate c;
    c.matrix_id = std::move(id);
    c.weights.assign(static_cast<std::size_t>(m.num_cells()), Rational(0));
    return c;
  }
  const Rational& weight(CellRef c) const { return weights.at(static_cast<std::size_t>(c.serial - 1)); }
  void set(CellRef c, Rational v) { weights.at(static_cast<std::size_t>(c.serial - 1)) = std::move(v); }
};

inline Rational certificate_objective(const DualCertificate& c) {
  Rational v(0);
  for (const auto& w : c.weights) v += w;
  for (const auto& q : c.cliques) v += q.z;
  for (const auto& g : c.ranks) v += Rational(g.alpha) * g.z;
  return v;
}

inline RectLinearForm to_form(const DualCertificate& c) {
  RectLinearForm f;
  f.weights = c.weights;
  for (const auto& q : c.cliques) f.groups.push_back({q.pairs, q.z});
  for (const auto& g : c.ranks) f.groups.push_back({g.pairs, g.z});
  return f;
}

// Rectangle spanned by a generator pair (rows x columns of its two cells).
inline Rect pair_span(const CommMatrix& m, const CellPair& p) {
  const auto [ra, ca] = m.position(p.a);
  const auto [rb, cb] = m.position(p.b);
  return Rect{line_bit(ra) | line_bit(rb), line_bit(ca) | line_bit(cb), 0};
}

// Problems with one generator pair: cells valid, distinct, singletons of the
// same index, and the spanned rectangle monochromatic in it.
inline std::vector<std::string> pair_problems(const CommMatrix& m, const CellPair& p) {
  std::vector<std::string> out;
  const std::string tag = "pair (" + std::to_string(p.a.serial) + "," + std::to_string(p.b.serial) + ")";
  if (!m.valid(p.a) || !m.valid(p.b)) {
    out.push_back(tag + ": cell outside the matrix");
    return out;
  }
  if (p.a == p.b) out.push_back(tag + ": cells coincide");
  const IndexMask ma = m.cell(p.a), mb = m.cell(p.b);
  if (!std::has_single_bit(ma) || !std::has_single_bit(mb)) {
    out.push_back(tag + ": not both singleton cells");
    return out;
  }
  if (ma != mb) {
    out.push_back(tag + ": singleton cells of different indices");
    return out;
  }
  Rect span = pair_span(m, p);
  span.color = std::countr_zero(ma) + 1;
  if (!is_monochromatic(m, span)) out.push_back(tag + ": spanned rectangle is not monochromatic");
  return out;
}

inline std::vector<std::string> validate_clique(const CommMatrix& m, const CliqueSpec& q) {
  std::vector<std::string> out;
  if (q.z.sign() > 0) out.push_back("clique multiplier must be <= 0");
  if (q.pairs.empty()) out.push_back("clique has no generator pairs");
  for (const auto& p : q.pairs) {
    auto e = pair_problems(m, p);
    out.insert(out.end(), e.begin(), e.end());
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < q.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < q.pairs.size(); ++j) {
      const Rect a = pair_span(m, q.pairs[i]), b = pair_span(m, q.pairs[j]);
      if (!rects_intersect(a, b))
        out.push_back("clique pairs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                      " do not share both a row and a column");
    }
  return out;
}

struct RankAlphaInfo {
  int matching_bound = 0;  // floor(|witness| / 2): upper bound on alpha(g)
  int span_mis = 0;        // independent set among the pair spans: lower bound on alpha(g)
};

inline RankAlphaInfo rank_alpha_info(const CommMatrix& m, const RankSpec& g) {
  RankAlphaInfo info;
  std::set<int> w;
  for (const auto& c : g.witness) w.insert(c.serial);
  info.matching_bound = static_cast<int>(w.size()) / 2;
  std::vector<Rect> spans;
  for (const auto& p : g.pairs) spans.push_back(pair_span(m, p));
  if (spans.size() <= static_cast<std::size_t>(kMaxStableSetVertices)) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < spans.size(); ++i)
      for (std::size_t j = i + 1; j < spans.size(); ++j)
        if (rects_intersect(spans[i], spans[j])) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    info.span_mis = max_independent_set(static_cast<int>(spans.size()), edges).size;
  }
  return info;
}

inline std::vector<std::string> validate_rank(const CommMatrix& m, const RankSpec& g) {
  std::vector<std::string> out;
  if (g.z.sign() > 0) out.push_back("rank multiplier must be <= 0");
  if (g.pairs.empty()) out.push_back("rank group has no generator pairs");
  std::set<int> w;
  for (const auto& c : g.witness) {
    if (!m.valid(c)) out.push_back("witness cell " + std::to_string(c.serial) + " outside the matrix");
    if (!w.insert(c.serial).second) out.push_back("witness cell " + std::to_string(c.serial) + " repeated");
  }
  for (const auto& p : g.pairs) {
    auto e = pair_problems(m, p);
    out.insert(out.end(), e.begin(), e.end());
  }
  if (!out.empty()) return out;
  for (const auto& p : g.pairs) {
    const Rect span = pair_span(m, p);
    int inside = 0;
    for (int s : w)
      if (span.contains(m, CellRef{s})) ++inside;
    if (inside < 2)
      out.push_back("rank pair (" + std::to_string(p.a.serial) + "," + std::to_string(p.b.serial) +
                    ") spans only " + std::to_string(inside) + " witness cell(s)");
  }
  const int bound = static_cast<int>(w.size()) / 2;
  if (g.alpha < bound)
    out.push_back("claimed alpha " + std::to_string(g.alpha) + " is below the witness matching bound " +
                  std::to_string(bound));
  return out;
}

struct Violation {
  std::string kind;  // "clique", "rank", "rectangle", "budget", "objective"
  std::string message;
  std::optional<Rect> rect;
  std::optional<Rational> value;
};

struct VerifyResult {
  bool feasible = false;
  Rational objective;  // recomputed
  Rational max_rect_value;  // largest left-hand side over all rectangles
  std::vector<Violation> violations;
  std::uint64_t nodes = 0;
};

inline VerifyResult verify_certificate(const CommMatrix& m, const DualCertificate& cert,
                                       const OracleOptions& opts = {}) {
  VerifyResult res;
  require(static_cast<int>(cert.weights.size()) == m.num_cells(), "verify_certificate: weight vector size mismatch");
  res.objective = certificate_objective(cert);
  for (std::size_t i = 0; i < cert.cliques.size(); ++i)
    for (auto& e : validate_clique(m, cert.cliques[i]))
      res.violations.push_back({"clique", "clique " + std::to_string(i + 1) + ": " + e, std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < cert.ranks.size(); ++i)
    for (auto& e : validate_rank(m, cert.ranks[i]))
      res.violations.push_back({"rank", "rank " + std::to_string(i + 1) + ": " + e, std::nullopt, std::nullopt});
  if (!res.violations.empty()) return res;
  const RectLinearForm form = to_form(cert);
  bool first = true;
  for (int color = 1; color <= m.arity(); ++color) {
    const OracleResult r = max_linear_form(m, form, color, opts);
    res.nodes += r.nodes;
    if (!r.found && r.exact) continue;
    if (r.found && (first || r.value > res.max_rect_value)) {
      res.max_rect_value = r.value;
      first = false;
    }
    if (r.found && r.value > 1) {
      res.violations.push_back({"rectangle", "rectangle value exceeds 1", r.rect, r.value});
    } else if (!r.exact && r.upper > 1) {
      res.violations.push_back({"budget", "oracle budget exhausted for color " + std::to_string(color) +
                                              "; upper bound " + r.upper.str(),
                                std::nullopt, r.upper});
    }
  }
  if (cert.objective != res.objective)
    res.violations.push_back({"objective", "declared objective " + cert.objective.str() + " differs from recomputed " +
                                               res.objective.str(),
                              std::nullopt, std::nullopt});
  res.feasible = res.violations.empty();
  return res;
}

}  // namespace kwb
