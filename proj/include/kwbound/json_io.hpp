#pragma once

// JSON forms of functions, formulas, matrices, certificates and LPs.
// Rationals are always "p/q" strings; bitstrings put variable 1 leftmost;
// cell serials are 1-based row-major.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kwbound/boolean.hpp"
#include "kwbound/certificate.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/error.hpp"
#include "kwbound/formula.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/simplex.hpp"

namespace kwb {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("json: missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational_field(const Json& j) {
  require(j.is_string(), "json: rationals must be \"p/q\" strings");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("json: ") + e.what());
  }
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("json: bad value for ") + what);
  }
}

}  // namespace detail

// ---------------------------------------------------------------- functions

inline Json to_json(const BooleanFunction& f) { return Json{{"n", f.arity()}, {"table_hex", f.table_hex()}}; }

inline BooleanFunction function_from_json(const Json& j) {
  const int n = detail::get_as<int>(detail::field(j, "n"), "n");
  require(n >= 1 && n <= kMaxTableArity, "json: function arity out of range");
  return BooleanFunction::from_hex(n, detail::get_as<std::string>(detail::field(j, "table_hex"), "table_hex"));
}

// ---------------------------------------------------------------- formulas

inline Json formula_node_json(const Formula& f, int i) {
  const auto& n = f.nodes()[static_cast<std::size_t>(i)];
  if (n.op == Formula::Op::Leaf) return Json{{"var", n.var}, {"neg", n.neg}};
  return Json{{"op", n.op == Formula::Op::And ? "and" : "or"},
              {"left", formula_node_json(f, n.left)},
              {"right", formula_node_json(f, n.right)}};
}

inline Json to_json(const Formula& f) {
  require(!f.empty(), "json: empty formula");
  return formula_node_json(f, f.root_index());
}

inline Formula formula_from_json(const Json& j) {
  require(j.is_object(), "json: formula nodes must be objects");
  if (j.contains("var")) {
    const bool neg = j.contains("neg") && detail::get_as<bool>(j.at("neg"), "neg");
    return Formula::literal(detail::get_as<int>(j.at("var"), "var"), neg);
  }
  const auto op = detail::get_as<std::string>(detail::field(j, "op"), "op");
  const Formula l = formula_from_json(detail::field(j, "left"));
  const Formula r = formula_from_json(detail::field(j, "right"));
  if (op == "and") return Formula::conj(l, r);
  if (op == "or") return Formula::disj(l, r);
  throw InvalidInput("json: formula op must be \"and\" or \"or\"");
}

// ---------------------------------------------------------------- matrices

inline Json to_json(const CommMatrix& m) {
  Json rows = Json::array(), cols = Json::array(), cells = Json::array();
  for (const auto& r : m.rows()) rows.push_back(r.str());
  for (const auto& c : m.cols()) cols.push_back(c.str());
  for (int r = 0; r < m.num_rows(); ++r) {
    Json line = Json::array();
    for (int c = 0; c < m.num_cols(); ++c) line.push_back(indices_of(m.cell(r, c)));
    cells.push_back(std::move(line));
  }
  return Json{{"mode", to_string(m.mode())}, {"n", m.arity()},        {"provenance", m.provenance()},
              {"rows", std::move(rows)},     {"cols", std::move(cols)}, {"cells", std::move(cells)}};
}

// Cells are recomputed from the row and column vectors and must match the
// document when it lists them.
inline CommMatrix matrix_from_json(const Json& j) {
  const Mode mode = parse_mode(detail::get_as<std::string>(detail::field(j, "mode"), "mode"));
  const int n = detail::get_as<int>(detail::field(j, "n"), "n");
  std::vector<BitVector> rows, cols;
  for (const auto& r : detail::field(j, "rows")) rows.push_back(BitVector::parse(detail::get_as<std::string>(r, "rows")));
  for (const auto& c : detail::field(j, "cols")) cols.push_back(BitVector::parse(detail::get_as<std::string>(c, "cols")));
  for (const auto& v : rows) require(v.n == n, "json: row bitstring length differs from n");
  for (const auto& v : cols) require(v.n == n, "json: column bitstring length differs from n");
  std::string provenance = j.contains("provenance") ? detail::get_as<std::string>(j.at("provenance"), "provenance") : "";
  CommMatrix m(mode, n, std::move(rows), std::move(cols), std::move(provenance));
  if (j.contains("cells")) {
    const Json& cells = j.at("cells");
    require(cells.is_array() && static_cast<int>(cells.size()) == m.num_rows(), "json: cells row count mismatch");
    for (int r = 0; r < m.num_rows(); ++r) {
      const Json& line = cells.at(static_cast<std::size_t>(r));
      require(line.is_array() && static_cast<int>(line.size()) == m.num_cols(), "json: cells column count mismatch");
      for (int c = 0; c < m.num_cols(); ++c)
        require(detail::get_as<std::vector<int>>(line.at(static_cast<std::size_t>(c)), "cells") == indices_of(m.cell(r, c)),
                "json: listed cell differs from the recomputed one at serial " + std::to_string(m.ref(r, c).serial));
    }
  }
  return m;
}

// ---------------------------------------------------------------- certificates

inline Json pairs_json(const std::vector<CellPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({p.a.serial, p.b.serial});
  return out;
}

// `inline_matrix` embeds the matrix; otherwise "matrix" holds the id.
inline Json to_json(const DualCertificate& cert, const CommMatrix* inline_matrix = nullptr) {
  Json weights = Json::array();
  for (std::size_t i = 0; i < cert.weights.size(); ++i)
    if (!cert.weights[i].is_zero()) weights.push_back({{"cell", i + 1}, {"value", cert.weights[i].str()}});
  Json cliques = Json::array();
  for (const auto& q : cert.cliques) cliques.push_back({{"pairs", pairs_json(q.pairs)}, {"z", q.z.str()}});
  Json ranks = Json::array();
  for (const auto& g : cert.ranks) {
    Json witness = Json::array();
    for (const auto& w : g.witness) witness.push_back(w.serial);
    ranks.push_back({{"pairs", pairs_json(g.pairs)}, {"alpha", g.alpha}, {"witness", witness}, {"z", g.z.str()}});
  }
  return Json{{"matrix", inline_matrix ? to_json(*inline_matrix) : Json(cert.matrix_id)},
              {"weights", std::move(weights)},
              {"cliques", std::move(cliques)},
              {"ranks", std::move(ranks)},
              {"objective", cert.objective.str()}};
}

// Reads a certificate against `m`; serials are range-checked.
inline DualCertificate certificate_from_json(const Json& j, const CommMatrix& m) {
  auto cell = [&](const Json& s) {
    const int serial = detail::get_as<int>(s, "cell serial");
    const CellRef ref{serial};
    require(m.valid(ref), "json: cell serial " + std::to_string(serial) + " outside the matrix");
    return ref;
  };
  auto pairs = [&](const Json& arr) {
    std::vector<CellPair> out;
    require(arr.is_array(), "json: pairs must be an array");
    for (const auto& p : arr) {
      require(p.is_array() && p.size() == 2, "json: a pair is [serial, serial]");
      out.push_back({cell(p.at(0)), cell(p.at(1))});
    }
    return out;
  };
  const Json& mj = detail::field(j, "matrix");
  DualCertificate cert = DualCertificate::zero(m, mj.is_string() ? mj.get<std::string>() : m.provenance());
  for (const auto& w : detail::field(j, "weights")) cert.set(cell(detail::field(w, "cell")), detail::rational_field(detail::field(w, "value")));
  if (j.contains("cliques"))
    for (const auto& q : j.at("cliques"))
      cert.cliques.push_back({pairs(detail::field(q, "pairs")), detail::rational_field(detail::field(q, "z"))});
  if (j.contains("ranks"))
    for (const auto& g : j.at("ranks")) {
      RankSpec spec{pairs(detail::field(g, "pairs")), detail::get_as<int>(detail::field(g, "alpha"), "alpha"), {},
                    detail::rational_field(detail::field(g, "z"))};
      for (const auto& w : detail::field(g, "witness")) spec.witness.push_back(cell(w));
      cert.ranks.push_back(std::move(spec));
    }
  cert.objective = j.contains("objective") ? detail::rational_field(j.at("objective")) : certificate_objective(cert);
  return cert;
}

// Certificate whose "matrix" field is inline.
inline std::pair<CommMatrix, DualCertificate> certificate_with_matrix_from_json(const Json& j) {
  const Json& mj = detail::field(j, "matrix");
  require(mj.is_object(), "json: certificate matrix is an id, not an inline matrix");
  CommMatrix m = matrix_from_json(mj);
  DualCertificate cert = certificate_from_json(j, m);
  return {std::move(m), std::move(cert)};
}

// ---------------------------------------------------------------- linear programs

inline Json to_json(const LinearProgram& lp) {
  Json vars = Json::array(), constraints = Json::array(), objective = Json::array();
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    const auto& v = lp.vars[i];
    vars.push_back({{"name", v.name}, {"bound", to_string(v.bound)}});
    if (!v.cost.is_zero()) objective.push_back({i, v.cost.str()});
  }
  for (const auto& c : lp.constraints) {
    Json terms = Json::array();
    for (const auto& [i, a] : c.terms) terms.push_back({i, a.str()});
    constraints.push_back({{"name", c.name}, {"terms", terms}, {"rel", to_string(c.rel)}, {"rhs", c.rhs.str()}});
  }
  return Json{{"vars", std::move(vars)},
              {"constraints", std::move(constraints)},
              {"objective", {{"sense", lp.sense == Sense::Minimize ? "min" : "max"}, {"terms", std::move(objective)}}}};
}

inline LinearProgram lp_from_json(const Json& j) {
  auto bound = [](const std::string& s) {
    for (VarBound b : {VarBound::NonNegative, VarBound::NonPositive, VarBound::Free})
      if (s == to_string(b)) return b;
    throw InvalidInput("json: unknown variable bound '" + s + "'");
  };
  auto relation = [](const std::string& s) {
    for (Relation r : {Relation::LessEq, Relation::Equal, Relation::GreaterEq})
      if (s == to_string(r)) return r;
    throw InvalidInput("json: unknown relation '" + s + "'");
  };
  LinearProgram lp;
  for (const auto& v : detail::field(j, "vars"))
    lp.add_var(v.contains("name") ? detail::get_as<std::string>(v.at("name"), "name") : "",
               v.contains("bound") ? bound(detail::get_as<std::string>(v.at("bound"), "bound")) : VarBound::NonNegative,
               Rational(0));
  const Json& obj = detail::field(j, "objective");
  const auto sense = detail::get_as<std::string>(detail::field(obj, "sense"), "sense");
  require(sense == "min" || sense == "max", "json: objective sense must be min or max");
  lp.sense = sense == "min" ? Sense::Minimize : Sense::Maximize;
  auto index = [&](const Json& t) {
    require(t.is_array() && t.size() == 2, "json: a term is [index, \"p/q\"]");
    const int i = detail::get_as<int>(t.at(0), "term index");
    require(i >= 0 && i < static_cast<int>(lp.vars.size()), "json: term index out of range");
    return i;
  };
  for (const auto& t : detail::field(obj, "terms")) lp.vars[static_cast<std::size_t>(index(t))].cost = detail::rational_field(t.at(1));
  for (const auto& c : detail::field(j, "constraints")) {
    std::vector<std::pair<int, Rational>> terms;
    for (const auto& t : detail::field(c, "terms")) terms.push_back({index(t), detail::rational_field(t.at(1))});
    lp.add_constraint(std::move(terms), relation(detail::get_as<std::string>(detail::field(c, "rel"), "rel")),
                      detail::rational_field(detail::field(c, "rhs")),
                      c.contains("name") ? detail::get_as<std::string>(c.at("name"), "name") : "");
  }
  return lp;
}

inline Json to_json(const LPSolution& s) {
  Json primal = Json::array(), dual = Json::array();
  for (const auto& v : s.primal) primal.push_back(v.str());
  for (const auto& v : s.dual) dual.push_back(v.str());
  return Json{{"status", to_string(s.status)}, {"objective", s.objective.str()}, {"primal", primal}, {"dual", dual}};
}

}  // namespace kwb
