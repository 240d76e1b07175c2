// kwbound: formula-size lower bounds for the majority families from the
// Karchmer-Wigderson rectangle LP.
//
// Exit codes: 0 ok, 1 a verification reported infeasible, 2 invalid input,
// 3 a budget ran out. KWBOUND_BUDGET sets the default oracle node budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwbound/kwbound.hpp"

namespace {

using namespace kwb;

enum Exit { kOk = 0, kInfeasible = 1, kInvalid = 2, kBudget = 3 };

struct Common {
  std::string format = "text";
  std::uint64_t node_budget = 0;
  std::size_t memory_budget = 0;
  double time_limit = 0;
  bool no_timing = false;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("KWBOUND_BUDGET"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw InvalidInput("KWBOUND_BUDGET must be a positive integer");
    return v;
  }
  return OracleOptions{}.node_budget;
}

ReportOptions report_options(const Common& c) {
  ReportOptions o;
  o.bound.oracle.node_budget = c.node_budget ? c.node_budget : default_budget();
  o.bound.time_limit_s = c.time_limit;
  o.cover.node_budget = c.node_budget ? c.node_budget : std::max<std::uint64_t>(default_budget() / 10, 1);
  if (c.memory_budget) o.brute.max_tables = c.memory_budget;
  return o;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

struct FamilyArgs {
  std::string family;
  int l = 0, h = 0;
  std::string mode = "general";

  int param() const {
    if (family == "maj") {
      require(l > 0 && h == 0, "maj takes --l");
      return l;
    }
    require(h > 0 && l == 0, family + " takes --h");
    return h;
  }
};

void add_family(CLI::App* app, FamilyArgs& f, bool required = true) {
  auto* opt = app->add_option("--family", f.family, "maj, urec or brec")->check(CLI::IsMember({"maj", "urec", "brec"}));
  if (required) opt->required();
  app->add_option("--l", f.l, "maj parameter: MAJ_{2l+1}");
  app->add_option("--h", f.h, "urec/brec height");
  app->add_option("--mode", f.mode, "general or monotone (urec matrices)")->check(CLI::IsMember({"general", "monotone"}));
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--node-budget", c.node_budget, "oracle / cover search node cap")->check(CLI::PositiveNumber);
  app->add_option("--memory-budget", c.memory_budget, "brute force: max stored truth tables")->check(CLI::PositiveNumber);
  app->add_option("--time-limit", c.time_limit, "LP wall-clock budget in seconds")->check(CLI::PositiveNumber);
  app->add_flag("--no-timing", c.no_timing, "omit runtimes so output is byte-identical across runs");
}

BooleanFunction family_function(const FamilyArgs& f) {
  const int p = f.param();
  if (f.family == "maj") return maj(2 * p + 1);
  if (f.family == "urec") return urec_maj(p);
  return brec_maj(p);
}

std::optional<Formula> family_formula(const FamilyArgs& f) {
  const int p = f.param();
  if (f.family == "maj") return p == 1 ? std::optional<Formula>(maj3_formula()) : std::nullopt;
  if (f.family == "urec") return urec_formula(p);
  return brec_formula(p);
}

CommMatrix family_matrix(const FamilyArgs& f, const std::string& restriction) {
  const int p = f.param();
  const Mode mode = parse_mode(f.mode);
  if (restriction == "submatrix") {
    if (f.family == "maj") return maj_matrix(p);
    if (f.family == "urec") return urec_submatrix(p, mode).first;
    return brec_submatrix(p).first;
  }
  const Restriction r = restriction == "full" ? Restriction::full() : Restriction::terms();
  CommMatrix m = build_matrix(family_function(f), mode, r);
  m.set_provenance(f.family + " " + (f.family == "maj" ? "l=" : "h=") + std::to_string(p) + " " + restriction + " " + f.mode);
  return m;
}

DualCertificate builtin_certificate(const FamilyArgs& f, bool scheme) {
  const int p = f.param();
  if (f.family == "maj") return cert_maj(p);
  if (f.family == "urec") return urec_scheme(p, parse_mode(f.mode));
  if (p == 2 && !scheme) return cert_brec2();
  return brec_scheme(p);
}

int emit_reports(const std::vector<BoundReport>& reports, const Common& c, bool bare_single) {
  if (bare_single && reports.size() == 1 && c.format == "text" && reports[0].value) {
    std::cout << reports[0].value->str() << '\n';
    if (!reports[0].note.empty() && reports[0].status != "exact" && reports[0].status != "verified")
      std::cerr << reports[0].status << ": " << reports[0].note << '\n';
  } else {
    std::cout << emit(reports, c.format, !c.no_timing);
  }
  int code = kOk;
  for (const auto& r : reports) {
    if (r.status == "infeasible") code = kInfeasible;
    if (code == kOk && is_exit_budget(r)) code = kBudget;
  }
  return code;
}

int run(int argc, char** argv) {
  CLI::App app{"Formula size lower bounds for majority functions via the Karchmer-Wigderson rectangle LP"};
  app.require_subcommand(1);
  // -h would clash with --h, the height flag
  app.set_help_flag("--help", "print this help and exit");
  Common common;

  // gen
  FamilyArgs gen_f;
  bool gen_formula = false;
  auto* gen = app.add_subcommand("gen", "emit a family member as a truth table (or its known formula) in JSON");
  add_family(gen, gen_f);
  gen->add_flag("--formula", gen_formula, "emit the upper-bound formula instead of the truth table");

  // matrix
  FamilyArgs mat_f;
  std::string restriction = "submatrix", function_file;
  auto* mat = app.add_subcommand("matrix", "build a communication matrix");
  add_family(mat, mat_f, false);
  mat->add_option("--restriction", restriction, "submatrix (hand-picked), terms or full")
      ->check(CLI::IsMember({"submatrix", "terms", "full"}));
  mat->add_option("--function", function_file, "function JSON to build from instead of a family");
  add_common(mat, common);

  // bound
  FamilyArgs bound_f;
  std::vector<std::string> methods;
  std::string bound_matrix;
  auto* bound = app.add_subcommand("bound", "compute bounds (lp, lp+clique, cover, certificate, brute, upper-formula, all)");
  add_family(bound, bound_f, false);
  bound->add_option("--method", methods, "one or more methods")->required();
  bound->add_option("--matrix", bound_matrix, "matrix JSON (lp and cover only)");
  add_common(bound, common);

  // verify
  FamilyArgs ver_f;
  bool builtin = false, scheme = false, emit_cert = false;
  std::string cert_file;
  auto* verify = app.add_subcommand("verify", "check a dual certificate exactly");
  add_family(verify, ver_f, false);
  verify->add_flag("--builtin-cert", builtin, "use the family's built-in certificate");
  verify->add_flag("--scheme", scheme, "brec h=2: the tangency scheme instead of the 12-clique certificate");
  verify->add_option("--cert", cert_file, "certificate JSON (matrix inline, or given by the family flags)");
  verify->add_flag("--emit", emit_cert, "print the certificate JSON instead of verifying");
  add_common(verify, common);

  // brute
  FamilyArgs brute_f;
  bool monotone = false;
  int cap = 10;
  auto* brute = app.add_subcommand("brute", "minimal formula size by exhaustive search (n <= 5)");
  add_family(brute, brute_f, false);
  brute->add_option("--function", function_file, "function JSON instead of a family");
  brute->add_flag("--monotone", monotone, "monotone formulas only");
  brute->add_option("--cap", cap, "size cap (1..10)")->check(CLI::Range(1, 10));
  add_common(brute, common);

  // table
  std::string which = "paper";
  FamilyArgs table_f;
  auto* table = app.add_subcommand("table", "tables of bounds: 'paper' or one family member with every method");
  table->add_option("which", which, "paper or family")->check(CLI::IsMember({"paper", "family"}));
  add_family(table, table_f, false);
  add_common(table, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInvalid;
  }

  const ReportOptions ropts = report_options(common);

  if (gen->parsed()) {
    if (gen_formula) {
      const auto f = family_formula(gen_f);
      if (!f) throw InvalidInput("no explicit formula for this family member");
      std::cout << Json{{"size", f->size()}, {"formula", to_json(*f)}}.dump(2) << '\n';
    } else {
      std::cout << to_json(family_function(gen_f)).dump(2) << '\n';
    }
    return kOk;
  }

  if (mat->parsed()) {
    CommMatrix m;
    if (!function_file.empty()) {
      const BooleanFunction f = function_from_json(read_json_file(function_file));
      m = build_matrix(f, parse_mode(mat_f.mode), restriction == "full" ? Restriction::full() : Restriction::terms());
    } else {
      require(!mat_f.family.empty(), "matrix needs --family or --function");
      m = family_matrix(mat_f, restriction);
    }
    std::cout << (common.format == "json" ? to_json(m).dump(2) + "\n" : to_csv(m));
    return kOk;
  }

  if (bound->parsed()) {
    if (methods.size() == 1 && methods[0] == "all") methods = all_methods();
    if (!bound_matrix.empty()) {
      const CommMatrix m = matrix_from_json(read_json_file(bound_matrix));
      std::vector<BoundReport> out;
      for (const auto& method : methods) {
        const auto start = std::chrono::steady_clock::now();
        BoundReport r{"matrix", 0, m.provenance(), method, std::nullopt, "n/a", 0, {}};
        if (method == "lp") {
          const BoundResult b = lp_bound(m, ropts.bound);
          r.value = b.final ? b.value : b.lower;
          r.status = b.final ? "exact" : "interval";
          if (!b.final) r.note = b.note + "; upper end " + b.upper.str();
        } else if (method == "cover") {
          const CoverResult c = min_disjoint_cover(m, enumerate_all_mono_rects(m), ropts.cover);
          r.value = Rational(c.size ? *c.size : c.lower);
          r.status = c.size ? "exact" : "budget";
        } else {
          throw InvalidInput("with --matrix only lp and cover are available");
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
      }
      return emit_reports(out, common, true);
    }
    require(!bound_f.family.empty(), "bound needs --family or --matrix");
    ReportOptions o = ropts;
    o.urec_mode = parse_mode(bound_f.mode);
    return emit_reports(report(bound_f.family, bound_f.param(), methods, o), common, true);
  }

  if (verify->parsed()) {
    CommMatrix m;
    DualCertificate cert;
    if (!cert_file.empty()) {
      const Json j = read_json_file(cert_file);
      if (detail::field(j, "matrix").is_object()) {
        std::tie(m, cert) = certificate_with_matrix_from_json(j);
      } else {
        require(!ver_f.family.empty(), "certificate names its matrix by id; give the family flags");
        m = family_matrix(ver_f, "submatrix");
        cert = certificate_from_json(j, m);
      }
    } else {
      require(builtin, "verify needs --builtin-cert or --cert");
      require(!ver_f.family.empty(), "--builtin-cert needs --family");
      m = family_matrix(ver_f, "submatrix");
      cert = builtin_certificate(ver_f, scheme);
    }
    if (emit_cert) {
      std::cout << to_json(cert, &m).dump(2) << '\n';
      return kOk;
    }
    const VerifyResult v = verify_certificate(m, cert, ropts.bound.oracle);
    // budget-only violations mean undecided, not infeasible
    bool budget = !v.feasible;
    for (const auto& x : v.violations) budget = budget && x.kind == "budget";
    if (common.format == "json") {
      Json viol = Json::array();
      for (const auto& x : v.violations) {
        Json e{{"kind", x.kind}, {"message", x.message}};
        if (x.rect) e["rect"] = rect_str(*x.rect);
        if (x.value) e["value"] = x.value->str();
        viol.push_back(std::move(e));
      }
      std::cout << Json{{"feasible", v.feasible},
                        {"objective", v.objective.str()},
                        {"max_rect_value", v.max_rect_value.str()},
                        {"violations", viol}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << (v.feasible ? "feasible" : budget ? "undecided (budget exhausted)" : "infeasible") << ", objective " << v.objective.str() << '\n';
      for (const auto& x : v.violations) std::cout << "  " << x.kind << ": " << x.message << '\n';
    }
    if (v.feasible) return kOk;
    return budget ? kBudget : kInfeasible;
  }

  if (brute->parsed()) {
    BooleanFunction f;
    if (!function_file.empty()) {
      f = function_from_json(read_json_file(function_file));
    } else {
      require(!brute_f.family.empty(), "brute needs --family or --function");
      f = family_function(brute_f);
    }
    const FormulaSizeResult r = brute_force_formula_size(f, monotone, cap, ropts.brute);
    if (common.format == "json") {
      Json j{{"monotone", monotone}, {"cap", cap}};
      j["size"] = r.size ? Json(*r.size) : Json(nullptr);
      if (r.witness) j["witness"] = to_json(*r.witness);
      j["status"] = r.size ? "exact" : r.budget_exhausted ? "budget" : "exceeds cap";
      std::cout << j.dump(2) << '\n';
    } else if (r.size) {
      std::cout << *r.size << '\n';
      if (r.witness) std::cerr << "witness: " << r.witness->str() << '\n';
    } else {
      std::cout << (r.budget_exhausted ? "budget exhausted" : "exceeds cap") << '\n';
    }
    return r.size ? kOk : kBudget;
  }

  if (table->parsed()) {
    std::vector<BoundReport> rows;
    if (which == "paper") {
      rows = paper_table(ropts);
    } else {
      require(!table_f.family.empty(), "table family needs --family");
      ReportOptions o = ropts;
      o.urec_mode = parse_mode(table_f.mode);
      rows = report(table_f.family, table_f.param(), all_methods(), o);
    }
    if (common.format == "text" && which == "paper") common.format = "csv";
    return emit_reports(rows, common, false);
  }
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const kwb::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  }
}
