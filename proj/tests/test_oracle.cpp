#include <gtest/gtest.h>

#include <random>

#include "kwbound/builders.hpp"
#include "kwbound/rect_oracle.hpp"
#include "kwbound/submatrices.hpp"

using namespace kwb;

namespace {

Rational brute_max(const CommMatrix& m, const std::vector<Rect>& rects, const RectLinearForm& f, int color,
                   bool& found) {
  Rational best;
  found = false;
  for (const auto& r : rects) {
    if (r.color != color) continue;
    const Rational v = evaluate_form(m, f, r);
    if (!found || v > best) best = v;
    found = true;
  }
  return best;
}

RectLinearForm random_form(const CommMatrix& m, std::mt19937& rng, const std::vector<std::vector<CellPair>>& groups) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6), coin(0, 3);
  RectLinearForm f = RectLinearForm::zero(m);
  for (auto& w : f.weights) w = coin(rng) == 0 ? Rational(0) : Rational(num(rng), den(rng));
  for (const auto& g : groups)
    if (coin(rng) != 0) f.groups.push_back({g, Rational(-std::abs(num(rng)), den(rng))});
  return f;
}

void check_against_enumeration(const CommMatrix& m, const std::vector<std::vector<CellPair>>& groups, int trials,
                               unsigned seed) {
  const auto rects = enumerate_all_mono_rects(m);
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const RectLinearForm f = random_form(m, rng, groups);
    for (int color = 1; color <= m.arity(); ++color) {
      bool found = false;
      const Rational want = brute_max(m, rects, f, color, found);
      const OracleResult got = max_linear_form(m, f, color);
      ASSERT_EQ(got.found, found) << "trial " << t << " color " << color;
      if (!found) continue;
      ASSERT_TRUE(got.exact);
      ASSERT_EQ(got.value, want) << "trial " << t << " color " << color;
      // the reported rectangle attains the value and is monochromatic
      ASSERT_EQ(evaluate_form(m, f, got.rect), got.value);
      ASSERT_TRUE(is_monochromatic(m, got.rect));
      ASSERT_EQ(got.rect.color, color);
    }
  }
}

std::vector<std::vector<CellPair>> clique_pairs(const DualCertificate& c) {
  std::vector<std::vector<CellPair>> out;
  for (const auto& q : c.cliques) out.push_back(q.pairs);
  for (const auto& g : c.ranks) out.push_back(g.pairs);
  return out;
}

}  // namespace

TEST(OracleProperty, Maj3MatchesEnumeration) {
  check_against_enumeration(maj_matrix(1), clique_pairs(cert_maj3()), 150, 11);
}

TEST(OracleProperty, Brec2MatchesEnumeration) {
  check_against_enumeration(brec2_submatrix().first, clique_pairs(cert_brec2()), 120, 23);
}

TEST(OracleProperty, Maj5MatchesEnumeration) {
  check_against_enumeration(maj_matrix(2), clique_pairs(cert_maj(2)), 40, 5);
}

TEST(OracleProperty, UrecSubmatrixMatchesEnumeration) {
  for (Mode mode : {Mode::General, Mode::Monotone})
    check_against_enumeration(urec_submatrix(2, mode).first, {}, 40, 3);
}

TEST(Oracle, AllNegativeWeightsPickASingleCell) {
  const CommMatrix m = maj_matrix(1);
  RectLinearForm f = RectLinearForm::zero(m);
  for (auto& w : f.weights) w = Rational(-1);
  f.set(m.ref(1, 1), Rational(-1, 2));  // {1,3}
  const OracleResult r = max_linear_form(m, f, 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.value, Rational(-1, 2));
  EXPECT_EQ(r.rect.num_cells(), 1);
}

TEST(Oracle, RejectsPositivePenalty) {
  const CommMatrix m = maj_matrix(1);
  RectLinearForm f = RectLinearForm::zero(m);
  f.groups.push_back({{CellPair{m.ref(0, 0), m.ref(2, 2)}}, Rational(1)});
  EXPECT_THROW(max_linear_form(m, f, 1), InvalidInput);
}

TEST(Oracle, BudgetGivesSoundUpperBound) {
  const CommMatrix m = maj_matrix(2);
  std::mt19937 rng(1);
  const RectLinearForm f = random_form(m, rng, {});
  const OracleResult full = max_linear_form(m, f, 1);
  const OracleResult cut = max_linear_form(m, f, 1, OracleOptions{5});
  ASSERT_TRUE(full.exact);
  EXPECT_FALSE(cut.exact);
  EXPECT_LE(cut.value, full.value);
  EXPECT_GE(cut.upper, full.value);
}
