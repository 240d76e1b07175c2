#include <gtest/gtest.h>

#include <random>

#include "kwbound/simplex.hpp"

using namespace kwb;

namespace {
using Terms = std::vector<std::pair<int, Rational>>;
}

TEST(Simplex, TextbookMaximization) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  const int x = lp.add_var("x", VarBound::NonNegative, 3);
  const int y = lp.add_var("y", VarBound::NonNegative, 5);
  lp.add_constraint(Terms{{x, 1}}, Relation::LessEq, 4);
  lp.add_constraint(Terms{{y, 2}}, Relation::LessEq, 12);
  lp.add_constraint(Terms{{x, 3}, {y, 2}}, Relation::LessEq, 18);
  const LPSolution s = simplex_solve(lp);
  ASSERT_EQ(s.status, LPStatus::Optimal);
  EXPECT_EQ(s.objective, Rational(36));
  EXPECT_EQ(s.primal[0], Rational(2));
  EXPECT_EQ(s.primal[1], Rational(6));
  EXPECT_EQ(s.dual[0], Rational(0));
  EXPECT_EQ(s.dual[1], Rational(3, 2));
  EXPECT_EQ(s.dual[2], Rational(1));
  EXPECT_EQ(check_optimality(lp, s), "");
}

TEST(Simplex, FractionalMinimization) {
  LinearProgram lp;
  const int x = lp.add_var("x", VarBound::NonNegative, 1);
  const int y = lp.add_var("y", VarBound::NonNegative, 1);
  lp.add_constraint(Terms{{x, 1}, {y, 2}}, Relation::GreaterEq, 2);
  lp.add_constraint(Terms{{x, 3}, {y, 1}}, Relation::GreaterEq, 3);
  const LPSolution s = simplex_solve(lp);
  ASSERT_EQ(s.status, LPStatus::Optimal);
  EXPECT_EQ(s.objective, Rational(7, 5));
  EXPECT_EQ(check_optimality(lp, s), "");
}

TEST(Simplex, KleeMinty) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  const int a = lp.add_var("a", VarBound::NonNegative, 100);
  const int b = lp.add_var("b", VarBound::NonNegative, 10);
  const int c = lp.add_var("c", VarBound::NonNegative, 1);
  lp.add_constraint(Terms{{a, 1}}, Relation::LessEq, 1);
  lp.add_constraint(Terms{{a, 20}, {b, 1}}, Relation::LessEq, 100);
  lp.add_constraint(Terms{{a, 200}, {b, 20}, {c, 1}}, Relation::LessEq, 10000);
  const LPSolution s = simplex_solve(lp);
  ASSERT_EQ(s.status, LPStatus::Optimal);
  EXPECT_EQ(s.objective, Rational(10000));
}

TEST(Simplex, FreeAndNonPositiveVariables) {
  LinearProgram lp;
  const int x = lp.add_var("x", VarBound::Free, 1);
  const int y = lp.add_var("y", VarBound::NonPositive, -1);
  lp.add_constraint(Terms{{x, 1}}, Relation::GreaterEq, -3);
  lp.add_constraint(Terms{{y, 1}}, Relation::GreaterEq, Rational(-5, 2));
  const LPSolution s = simplex_solve(lp);
  ASSERT_EQ(s.status, LPStatus::Optimal);
  EXPECT_EQ(s.primal[0], Rational(-3));
  EXPECT_EQ(s.primal[1], Rational(0));
  EXPECT_EQ(s.objective, Rational(-3));
  EXPECT_EQ(check_optimality(lp, s), "");
}

TEST(Simplex, EqualityRows) {
  LinearProgram lp;
  const int x = lp.add_var("x", VarBound::NonNegative, 2);
  const int y = lp.add_var("y", VarBound::NonNegative, 3);
  lp.add_constraint(Terms{{x, 1}, {y, 1}}, Relation::Equal, 10);
  lp.add_constraint(Terms{{x, 1}}, Relation::LessEq, 4);
  const LPSolution s = simplex_solve(lp);
  ASSERT_EQ(s.status, LPStatus::Optimal);
  EXPECT_EQ(s.objective, Rational(26));
  EXPECT_EQ(check_optimality(lp, s), "");
}

TEST(Simplex, Infeasible) {
  LinearProgram lp;
  const int x = lp.add_var("x", VarBound::NonNegative, 1);
  lp.add_constraint(Terms{{x, 1}}, Relation::LessEq, -1);
  EXPECT_EQ(simplex_solve(lp).status, LPStatus::Infeasible);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  const int x = lp.add_var("x", VarBound::NonNegative, 1);
  const int y = lp.add_var("y", VarBound::NonNegative, 0);
  lp.add_constraint(Terms{{x, 1}, {y, -1}}, Relation::LessEq, 1);
  EXPECT_EQ(simplex_solve(lp).status, LPStatus::Unbounded);
}

TEST(Simplex, CheckerRejectsWrongSolution) {
  LinearProgram lp;
  const int x = lp.add_var("x", VarBound::NonNegative, 1);
  lp.add_constraint(Terms{{x, 1}}, Relation::GreaterEq, 2);
  LPSolution s = simplex_solve(lp);
  ASSERT_EQ(check_optimality(lp, s), "");
  s.primal[0] = Rational(3);
  EXPECT_NE(check_optimality(lp, s), "");
}

TEST(Simplex, BadVariableIndex) {
  LinearProgram lp;
  lp.add_var("x", VarBound::NonNegative, 1);
  EXPECT_THROW(lp.add_constraint(Terms{{1, 1}}, Relation::LessEq, 1), InvalidInput);
}

// Random bounded LPs: every optimum must pass the independent optimality check.
TEST(SimplexProperty, RandomBoxedProgramsAreCertified) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-6, 6), rhs(0, 20), pick(0, 2);
  for (int trial = 0; trial < 150; ++trial) {
    LinearProgram lp;
    lp.sense = trial % 2 ? Sense::Maximize : Sense::Minimize;
    const int n = 2 + trial % 5;
    for (int j = 0; j < n; ++j) lp.add_var("v" + std::to_string(j), VarBound::NonNegative, coef(rng));
    for (int j = 0; j < n; ++j) lp.add_constraint(Terms{{j, 1}}, Relation::LessEq, 10);
    for (int i = 0; i < 3; ++i) {
      Terms t;
      for (int j = 0; j < n; ++j) t.emplace_back(j, Rational(coef(rng), 1 + pick(rng)));
      const Relation rel = pick(rng) == 0 ? Relation::GreaterEq : Relation::LessEq;
      lp.add_constraint(t, rel, Rational(rel == Relation::GreaterEq ? -rhs(rng) : rhs(rng)));
    }
    const LPSolution s = simplex_solve(lp);
    if (s.status != LPStatus::Optimal) {
      EXPECT_EQ(s.status, LPStatus::Infeasible) << trial;  // boxed, so never unbounded
      continue;
    }
    EXPECT_EQ(check_optimality(lp, s), "") << trial;
  }
}
