// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a
// criterion fails, unless it is listed with --allow-red.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kwbound/kwbound.hpp"

using namespace kwb;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void criterion1(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const BoundResult b = lp_bound(maj_matrix(1));
  const double s = seconds_since(t);
  o.check(b.final && b.value == Rational(9, 2), "MAJ3 LP = " + b.value.str());
  o.check(s < 1.0, "time " + std::to_string(s) + " s < 1 s");
}

void criterion2(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const CommMatrix m = maj_matrix(1);
  const DualCertificate c = cert_maj3();
  const VerifyResult v = verify_certificate(m, c);
  o.check(v.feasible && v.objective == Rational(5), "cert_maj3 feasible, objective " + v.objective.str());
  const BoundResult sb = strengthened_bound(m, c.cliques, {});
  o.check(sb.lower >= Rational(5), "strengthened = " + sb.value.str());
  const CoverResult cov = min_disjoint_cover(m, enumerate_all_mono_rects(m));
  o.check(cov.size && *cov.size == 5, "cover = " + (cov.size ? std::to_string(*cov.size) : std::string("?")));
  for (bool mono : {false, true}) {
    const auto r = brute_force_formula_size(maj(3), mono);
    o.check(r.size && *r.size == 5, std::string(mono ? "monotone" : "general") + " brute = " +
                                        (r.size ? std::to_string(*r.size) : std::string("?")));
  }
  const double s = seconds_since(t);
  o.check(s < 10, "time " + std::to_string(s) + " s < 10 s");
}

void criterion3(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const VerifyResult v2 = verify_certificate(maj_matrix(2), cert_maj(2));
  o.check(v2.feasible && v2.objective == Rational(45, 4), "cert_maj(2) objective " + v2.objective.str());
  const mpz_class ceil2 = v2.objective.ceil();
  o.check(ceil2 == 12 && ceil2 > 9, "integral bound " + ceil2.get_str() + " > Khrapchenko 9");
  const CommMatrix m7 = maj_matrix(3);
  o.check(m7.num_rows() == 35 && m7.num_cols() == 35, "MAJ7 matrix 35x35");
  const VerifyResult v3 = verify_certificate(m7, cert_maj(3));
  o.check(v3.feasible && v3.objective == Rational(560, 29), "cert_maj(3) objective " + v3.objective.str());
  const double s = seconds_since(t);
  o.check(s < 300, "time " + std::to_string(s) + " s < 300 s");
}

void criterion4(Outcome& o) {
  auto t = std::chrono::steady_clock::now();
  const SchemeResult r2 = cert_urec(2, Mode::General);
  o.check(r2.certified() >= Rational(74, 9), "h=2 certified " + r2.certified().str() + " >= 74/9" +
                                                  (r2.scheme_verified() ? " (scheme)" : " (solver fallback)"));
  const Formula f2 = urec_formula(2);
  o.check(f2.size() == 9 && formula_to_function(f2, 5) == urec_maj(2), "urec_formula(2) size 9 computes URecMAJ3^2");
  o.check(seconds_since(t) < 300, "h=2 time " + std::to_string(seconds_since(t)) + " s");

  t = std::chrono::steady_clock::now();
  BoundOptions opts;
  opts.time_limit_s = 900;
  const SchemeResult r3 = cert_urec(3, Mode::General, opts);
  std::string d3 = "h=3 general certified " + r3.certified().str() + " (" + r3.certified().decimal(6) + ")";
  if (r3.fallback) d3 += ", solver " + std::string(r3.fallback->final ? "exact" : "upper ~" + r3.fallback->upper.decimal(6));
  o.check(r3.certified() >= Rational(109, 9), d3 + " >= 109/9");
  const Formula f3 = urec_formula(3);
  o.check(f3.size() == 13 && formula_to_function(f3, 7) == urec_maj(3), "urec_formula(3) size 13 computes URecMAJ3^3");
  const SchemeResult m3 = cert_urec(3, Mode::Monotone);
  o.detail << "; for reference the monotone scheme certifies " << m3.certified().str()
           << (m3.scheme_verified() ? " (verified)" : "");
  o.check(seconds_since(t) < 1800, "h=3 time " + std::to_string(seconds_since(t)) + " s");
}

void criterion5(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const CommMatrix m = brec2_submatrix().first;
  const DualCertificate c = cert_brec2();
  int valid = 0;
  for (const auto& q : c.cliques) valid += validate_clique(m, q).empty();
  o.check(c.cliques.size() == 12 && valid == 12, std::to_string(valid) + "/12 cliques valid");
  std::vector<int> witness;
  for (const auto& w : c.ranks.at(0).witness) witness.push_back(w.serial);
  o.check(witness == std::vector<int>{9, 17, 25, 33, 41, 49, 57, 65, 73} && c.ranks[0].alpha == 4 &&
              validate_rank(m, c.ranks[0]).empty() && rank_alpha_info(m, c.ranks[0]).matching_bound <= 4,
          "alpha <= 4 via the witness cells");
  const VerifyResult v = verify_certificate(m, c);
  o.check(v.feasible && v.objective == Rational(20), "cert_brec2 feasible, objective " + v.objective.str());
  o.check(seconds_since(t) < 120, "time " + std::to_string(seconds_since(t)) + " s");
}

void criterion6(Outcome& o, double full_budget) {
  const auto t = std::chrono::steady_clock::now();
  const BoundResult b = lp_bound(brec2_submatrix().first);
  o.check(b.final && b.value < Rational(20) && b.value <= Rational(33, 2), "9x9 LP = " + b.value.str());
  const CommMatrix full = build_matrix(brec_maj(2), Mode::Monotone, Restriction::terms());
  BoundOptions opts;
  opts.time_limit_s = full_budget;
  const BoundResult f = lp_bound(full, opts);
  if (f.final) {
    o.check(f.value < Rational(20), "27x27 LP = " + f.value.str());
  } else {
    // budget ran out: only the certified interval is reported
    o.check(f.lower < Rational(20), "27x27 LP in [" + f.lower.decimal(6) + ", " + f.upper.decimal(6) +
                                        "] after " + std::to_string(static_cast<int>(full_budget)) +
                                        " s budget (" + f.note + ")");
  }
  o.check(seconds_since(t) < 1800, "time " + std::to_string(seconds_since(t)) + " s");
}

void criterion7(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const SchemeResult r = cert_brec(2);
  o.check(r.certified() >= Rational(1504, 81), "certified " + r.certified().str() +
                                                    (r.scheme_verified() ? " (scheme verified)" : " (fallback)"));
  o.check(r.certified() > Rational(16), "exceeds adversary bound 16");
  o.check(seconds_since(t) < 1800, "time " + std::to_string(seconds_since(t)) + " s");
}

void criterion8(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  // (a) oracle against enumeration
  int forms = 0, mismatches = 0;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5), coin(0, 3);
  for (const CommMatrix& m : {maj_matrix(1), brec2_submatrix().first}) {
    const auto rects = enumerate_all_mono_rects(m);
    const DualCertificate groups = m.num_rows() == 3 ? cert_maj3() : cert_brec2();
    for (int trial = 0; trial < 100; ++trial, ++forms) {
      RectLinearForm f = RectLinearForm::zero(m);
      for (auto& w : f.weights) w = Rational(num(rng), den(rng));
      for (const auto& q : groups.cliques)
        if (coin(rng) == 0) f.groups.push_back({q.pairs, Rational(-coin(rng), den(rng))});
      for (int color = 1; color <= m.arity(); ++color) {
        std::optional<Rational> best;
        for (const auto& r : rects)
          if (r.color == color)
            if (const Rational v = evaluate_form(m, f, r); !best || v > *best) best = v;
        const OracleResult got = max_linear_form(m, f, color);
        if (got.found != best.has_value() || (best && got.value != *best)) ++mismatches;
      }
    }
  }
  o.check(mismatches == 0, "(a) " + std::to_string(forms) + " random forms, " + std::to_string(mismatches) + " mismatches");
  // (b) weak duality chain on MAJ3
  const CommMatrix m3 = maj_matrix(1);
  const Rational lp = lp_bound(m3).value, sb = strengthened_bound(m3, cert_maj3().cliques, {}).value;
  const int cover = *min_disjoint_cover(m3, enumerate_all_mono_rects(m3)).size;
  const int brute = *brute_force_formula_size(maj(3), false).size;
  o.check(lp <= sb && sb <= Rational(cover) && cover <= brute,
          "(b) " + lp.str() + " <= " + sb.str() + " <= " + std::to_string(cover) + " <= " + std::to_string(brute));
  // (c), (d) tangency and border inequalities
  std::vector<Rational> kstars;
  for (int l = 1; l <= 3; ++l) kstars.push_back(maj_kstar(l));
  for (int h = 2; h <= 4; ++h) kstars.push_back(Rational(3) * pow(Rational(2), static_cast<unsigned>(h)) / Rational(4));
  for (int h = 1; h <= 3; ++h) kstars.push_back(pow(Rational(3, 2), static_cast<unsigned>(h)));
  bool tangency = true, border = true;
  for (const auto& ks : kstars) {
    tangency = tangency && TangencyScheme::at(ks).max_over(1000).first <= Rational(1);
  }
  for (int h = 2; h <= 8; ++h) border = border && !border_grid_violation(Rational(3L << (h - 2)), 3L << (h - 2));
  o.check(tangency, "(c) tangency <= 1 for " + std::to_string(kstars.size()) + " schemes");
  o.check(border, "(d) border inequality on 0 <= x, y <= k*, h = 2..8");
  // (e) singleton exclusivity
  bool exclusive = true;
  for (const CommMatrix& m : {maj_matrix(1), maj_matrix(2), brec2_submatrix().first, urec_submatrix(2).first}) {
    const auto singles = singleton_cells(m);
    for (const auto& r : enumerate_all_mono_rects(m))
      for (const auto& s : singles)
        if (r.contains(m, s.cell) && s.index != r.color) exclusive = false;
  }
  o.check(exclusive, "(e) singleton exclusivity");
  // (f) minterm and maxterm counts
  bool balanced = true;
  for (int l = 1; l <= 3; ++l) balanced = balanced && minterms(maj(2 * l + 1)).size() == maxterms(maj(2 * l + 1)).size();
  for (int h = 1; h <= 3; ++h) {
    balanced = balanced && minterms(urec_maj(h)).size() == maxterms(urec_maj(h)).size();
    balanced = balanced && brec_terms(h, TermKind::Minterm).size() == brec_terms(h, TermKind::Maxterm).size();
  }
  o.check(balanced, "(f) |minterms| = |maxterms|");
  o.check(seconds_since(t) < 600, "time " + std::to_string(seconds_since(t)) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> allow_red, only;
  double full_budget = 120;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--allow-red" && i + 1 < argc) {
      allow_red.insert(std::atoi(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else if (a == "--full-lp-seconds" && i + 1 < argc) {
      full_budget = std::atof(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]... [--allow-red N]... [--full-lp-seconds S]\n");
      return 2;
    }
  }
  const std::vector<std::function<void(Outcome&)>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      [&](Outcome& o) { criterion6(o, full_budget); }, criterion7, criterion8};
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.contains(n)) continue;
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass && !allow_red.contains(n)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
