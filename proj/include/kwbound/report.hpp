#pragma once

// Runs bound methods on the majority families and renders the results as
// CSV, JSON or text.
//
// Families: maj (param l, MAJ_{2l+1} terms matrix, general mode), urec
// (param h, the S_h submatrix in the chosen mode), brec (param h, the
// monotone S_h submatrix). Methods: lp, lp+clique (with the family's clique
// and rank groups), cover, certificate, brute, upper-formula.

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/builders.hpp"
#include "kwbound/certificate.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/cutting_plane.hpp"
#include "kwbound/error.hpp"
#include "kwbound/exact_cover.hpp"
#include "kwbound/formula.hpp"
#include "kwbound/formula_search.hpp"
#include "kwbound/json_io.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/rect.hpp"
#include "kwbound/submatrices.hpp"

namespace kwb {

inline const std::vector<std::string>& all_methods() {
  static const std::vector<std::string> kMethods = {"lp", "lp+clique", "cover", "certificate", "brute", "upper-formula"};
  return kMethods;
}

struct BoundReport {
  std::string family;
  int param = 0;
  std::string matrix_id;
  std::string method;
  std::optional<Rational> value;
  // "exact" (an optimum), "verified" (a checked certificate), "fallback"
  // (scheme rejected, solver value reported), "interval" (budgeted; value is
  // the certified lower end), "budget", "infeasible", "n/a"
  std::string status;
  double ms = 0;
  std::string note;

  // Formula size is an integer, so a lower bound v gives ceil(v); exact
  // sizes and upper bounds are their own integral value.
  std::optional<mpz_class> integral_bound() const {
    if (!value) return std::nullopt;
    return value->ceil();
  }
};

struct ReportOptions {
  BoundOptions bound;
  CoverOptions cover;
  FormulaSearchOptions brute;
  Mode urec_mode = Mode::General;
};

inline bool is_exit_budget(const BoundReport& r) { return r.status == "budget" || r.status == "interval"; }

namespace detail {

struct FamilyInstance {
  CommMatrix matrix;
  std::vector<CliqueSpec> cliques;
  std::vector<RankSpec> ranks;
  std::optional<BooleanFunction> function;  // when a truth table exists
  std::optional<Formula> formula;           // known upper-bound formula
};

inline FamilyInstance family_instance(const std::string& family, int param, Mode urec_mode) {
  if (family == "maj") {
    require(param >= 1 && param <= 3, "maj: l must be 1..3");
    FamilyInstance fi{maj_matrix(param), {}, {}, maj(2 * param + 1), std::nullopt};
    for (auto q : cert_maj(param).cliques) {
      q.z = Rational(0);
      fi.cliques.push_back(std::move(q));
    }
    if (param == 1) fi.formula = maj3_formula();
    return fi;
  }
  if (family == "urec") {
    require(param >= 1 && param <= 3, "urec: h must be 1..3");
    auto [m, spec] = urec_submatrix(param, urec_mode);
    FamilyInstance fi{m, {}, {}, urec_maj(param), urec_formula(param)};
    for (const auto& b : spec.blocks_of("S", 1))
      fi.cliques.push_back({singleton_pairs(m, line_range(b.row0, b.nrows), line_range(b.col0, b.ncols)), Rational(0)});
    return fi;
  }
  if (family == "brec") {
    require(param >= 1 && param <= 3, "brec: h must be 1..3");
    auto [m, spec] = brec_submatrix(param);
    FamilyInstance fi{m, {}, {}, std::nullopt, brec_formula(param)};
    if (param <= 2) fi.function = brec_maj(param);
    if (param == 1) {
      fi.cliques.push_back({singleton_pairs(m, {0, 1, 2}, {0, 1, 2}), Rational(0)});
    } else {
      for (const auto& b : spec.blocks_of("S", 2)) {
        auto [cliques, rank] = brec2_groups(m, b.row0, b.col0, Rational(0));
        fi.cliques.insert(fi.cliques.end(), cliques.begin(), cliques.end());
        fi.ranks.push_back(std::move(rank));
      }
    }
    return fi;
  }
  throw InvalidInput("unknown family '" + family + "' (expected maj, urec or brec)");
}

inline void fill_from_bound(BoundReport& r, const BoundResult& b) {
  if (b.final) {
    r.value = b.value;
    r.status = "exact";
  } else {
    r.value = b.lower;
    r.status = "interval";
    r.note = b.note + "; upper end " + b.upper.str();
  }
}

}  // namespace detail

inline BoundReport run_method(const std::string& family, int param, const std::string& method,
                              const ReportOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const detail::FamilyInstance fi = detail::family_instance(family, param, opts.urec_mode);
  BoundReport r{family, param, fi.matrix.provenance(), method, std::nullopt, "n/a", 0, {}};
  if (method == "lp") {
    detail::fill_from_bound(r, lp_bound(fi.matrix, opts.bound));
  } else if (method == "lp+clique") {
    detail::fill_from_bound(r, strengthened_bound(fi.matrix, fi.cliques, fi.ranks, opts.bound));
    r.note = std::to_string(fi.cliques.size()) + " cliques, " + std::to_string(fi.ranks.size()) + " rank groups" +
             (r.note.empty() ? "" : "; " + r.note);
  } else if (method == "cover") {
    if (fi.matrix.num_cells() > kMaxCoverCells) {
      r.note = "matrix too large for the exact cover search";
    } else {
      const CoverResult c = min_disjoint_cover(fi.matrix, enumerate_all_mono_rects(fi.matrix), opts.cover);
      if (c.size) {
        r.value = Rational(*c.size);
        r.status = "exact";
      } else {
        r.value = Rational(c.lower);
        r.status = "budget";
        r.note = "cover search budget exhausted; best cover " + (c.upper ? std::to_string(*c.upper) : std::string("none"));
      }
    }
  } else if (method == "certificate") {
    std::optional<VerifyResult> v;
    if (family == "maj") {
      v = verify_certificate(fi.matrix, cert_maj(param), opts.bound.oracle);
    } else if (family == "brec" && param == 2) {
      v = verify_certificate(fi.matrix, cert_brec2(), opts.bound.oracle);
      r.note = "the 12-clique certificate";
    } else if (family == "brec" && param == 1) {
      v = verify_certificate(fi.matrix, brec_scheme(1), opts.bound.oracle);
    }
    if (v) {
      r.value = v->objective;
      r.status = v->feasible ? "verified" : "infeasible";
    } else {
      const SchemeResult s = family == "urec" ? cert_urec(param, opts.urec_mode, opts.bound) : cert_brec(param, opts.bound);
      r.value = s.certified();
      if (s.scheme_verified()) {
        r.status = "verified";
      } else {
        r.status = s.fallback && s.fallback->final && s.fallback->lower >= s.scaled() ? "fallback" : "interval";
        r.note = "scheme (declared " + s.declared.str() + ") rejected, max rectangle value " +
                 s.verification.max_rect_value.str() + "; scaled scheme " + s.scaled().str();
        if (s.fallback)
          r.note += "; solver " + s.fallback->lower.str() + (s.fallback->final ? " (exact)" : " (" + s.fallback->note + ")");
      }
    }
  } else if (method == "brute") {
    if (!fi.function || fi.function->arity() > 5) {
      r.note = "brute force needs a function on at most 5 variables";
    } else {
      const bool monotone = fi.matrix.mode() == Mode::Monotone;
      const FormulaSizeResult b = brute_force_formula_size(*fi.function, monotone, opts.brute.size_cap, opts.brute);
      if (b.size) {
        r.value = Rational(*b.size);
        r.status = "exact";
        r.note = monotone ? "monotone formulas" : "all formulas";
      } else {
        r.status = "budget";
        r.note = b.budget_exhausted ? "search budget exhausted" : "exceeds size cap " + std::to_string(opts.brute.size_cap);
      }
    }
  } else if (method == "upper-formula") {
    if (fi.formula) {
      r.value = Rational(fi.formula->size());
      r.status = "exact";
      r.note = "formula of this size computes the function";
    } else {
      r.note = "no explicit formula for this family member";
    }
  } else {
    throw InvalidInput("unknown method '" + method + "'");
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<BoundReport> report(const std::string& family, int param, const std::vector<std::string>& methods,
                                       const ReportOptions& opts = {}) {
  std::vector<BoundReport> out;
  for (const auto& m : methods) out.push_back(run_method(family, param, m, opts));
  return out;
}

// The headline results, one group of rows per instance, all recomputed.
inline std::vector<BoundReport> paper_table(const ReportOptions& opts = {}) {
  std::vector<BoundReport> out;
  auto add = [&](const std::string& family, int param, const std::vector<std::string>& methods) {
    for (auto& r : report(family, param, methods, opts)) out.push_back(std::move(r));
  };
  add("maj", 1, {"lp", "lp+clique", "cover", "certificate", "brute", "upper-formula"});
  add("maj", 2, {"lp", "certificate"});
  {
    // the URec scheme's singleton cells exist only in the monotone matrix
    ReportOptions mono = opts;
    mono.urec_mode = Mode::Monotone;
    for (auto& r : report("urec", 2, {"certificate", "upper-formula"}, mono)) out.push_back(std::move(r));
  }
  add("brec", 2, {"lp", "certificate"});
  // the closed form of the BRec scheme next to what the scheme certifies
  for (int h = 1; h <= 3; ++h) {
    const auto start = std::chrono::steady_clock::now();
    const CommMatrix m = brec_submatrix(h).first;
    const DualCertificate scheme = brec_scheme(h);
    const VerifyResult v = verify_certificate(m, scheme, opts.bound.oracle);
    BoundReport r{"brec", h, m.provenance(), "scheme-formula", scheme.objective, "verified", 0, "closed form verified"};
    if (!v.feasible) {
      // dividing by the largest rectangle value restores feasibility
      r.value = v.objective / v.max_rect_value;
      r.status = "scaled";
      r.note = "closed form " + scheme.objective.str() + " fails, max rectangle value " + v.max_rect_value.str();
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- emit

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string format_ms(double ms) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << ms;
  return os.str();
}

inline std::string emit_csv(const std::vector<BoundReport>& reports, bool with_timing = true) {
  std::string out = "family,param,method,value_exact,value_decimal,integral_bound,status,ms\n";
  for (const auto& r : reports) {
    out += csv_field(r.family) + "," + std::to_string(r.param) + "," + csv_field(r.method) + ",";
    out += (r.value ? r.value->str() : "") + "," + (r.value ? r.value->decimal(10) : "") + ",";
    const auto ib = r.integral_bound();
    out += (ib ? ib->get_str() : "") + "," + csv_field(r.status) + "," + (with_timing ? format_ms(r.ms) : "") + "\n";
  }
  return out;
}

inline Json to_json(const BoundReport& r, bool with_timing = true) {
  Json j{{"family", r.family}, {"param", r.param}, {"matrix", r.matrix_id}, {"method", r.method}};
  j["value_exact"] = r.value ? Json(r.value->str()) : Json(nullptr);
  j["value_decimal"] = r.value ? Json(r.value->decimal(10)) : Json(nullptr);
  const auto ib = r.integral_bound();
  j["integral_bound"] = ib ? Json(ib->get_str()) : Json(nullptr);
  j["status"] = r.status;
  if (with_timing) j["ms"] = r.ms;
  j["note"] = r.note;
  return j;
}

inline std::string emit_json(const std::vector<BoundReport>& reports, bool with_timing = true) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, with_timing));
  return arr.dump(2) + "\n";
}

inline std::string emit_text(const std::vector<BoundReport>& reports, bool with_timing = true) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.family;
    if (r.family != "matrix") os << (r.family == "maj" ? " l=" : " h=") << r.param;
    os << "  " << r.method << ": ";
    if (r.value) {
      os << r.value->str() << " (" << r.value->decimal(10) << ")";
      if (r.method != "upper-formula" && !r.value->is_integer()) os << " => " << r.integral_bound()->get_str();
    } else {
      os << "-";
    }
    os << "  [" << r.status;
    if (with_timing) os << ", " << format_ms(r.ms) << " ms";
    os << "]";
    if (!r.note.empty()) os << "  " << r.note;
    os << '\n';
  }
  return os.str();
}

inline std::string emit(const std::vector<BoundReport>& reports, const std::string& format, bool with_timing = true) {
  if (format == "csv") return emit_csv(reports, with_timing);
  if (format == "json") return emit_json(reports, with_timing);
  if (format == "text") return emit_text(reports, with_timing);
  throw InvalidInput("unknown format '" + format + "' (expected json, csv or text)");
}

}  // namespace kwb
