#include <gtest/gtest.h>

#include "kwbound/builders.hpp"
#include "kwbound/certificate.hpp"
#include "kwbound/submatrices.hpp"
#include "kwbound/tangency.hpp"

using namespace kwb;

TEST(CertMaj3, FeasibleWithObjectiveFive) {
  const DualCertificate c = cert_maj3();
  const VerifyResult v = verify_certificate(maj_matrix(1), c);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.objective, Rational(5));
  ASSERT_EQ(c.cliques.size(), 1u);
  std::vector<std::pair<int, int>> serials;
  for (const auto& p : c.cliques[0].pairs) serials.emplace_back(p.a.serial, p.b.serial);
  EXPECT_EQ(serials, (std::vector<std::pair<int, int>>{{2, 6}, {1, 9}, {4, 8}}));
}

TEST(CertMaj3, RaisingAWeightBreaksIt) {
  DualCertificate c = cert_maj3();
  const CommMatrix m = maj_matrix(1);
  c.set(m.ref(0, 2), Rational(1, 10));  // the all-index cell
  c.objective = certificate_objective(c);
  const VerifyResult v = verify_certificate(m, c);
  EXPECT_FALSE(v.feasible);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_EQ(v.violations.front().kind, "rectangle");
  EXPECT_GT(v.max_rect_value, Rational(1));
}

TEST(CertMaj3, WrongDeclaredObjectiveIsReported) {
  DualCertificate c = cert_maj3();
  c.objective = Rational(6);
  const VerifyResult v = verify_certificate(maj_matrix(1), c);
  EXPECT_FALSE(v.feasible);
  EXPECT_EQ(v.violations.back().kind, "objective");
}

TEST(CertMaj, FiveIsFortyFiveQuarters) {
  const DualCertificate c = cert_maj(2);
  const VerifyResult v = verify_certificate(maj_matrix(2), c);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.objective, Rational(45, 4));
  EXPECT_EQ(v.max_rect_value, Rational(63, 64));
  EXPECT_EQ(c.cliques.size(), 20u);
  // ceil(45/4) = 12 beats Khrapchenko's 9
  EXPECT_GT(Rational(45, 4), Rational(11));
}

TEST(CertMaj, DeclaredObjectiveClosedForm) {
  // at l=1 the closed form only gives the plain LP value; the clique lifts it to 5
  EXPECT_EQ(maj_declared_objective(1), Rational(9, 2));
  EXPECT_EQ(maj_declared_objective(2), Rational(45, 4));
  EXPECT_EQ(maj_declared_objective(3), Rational(560, 29));
  EXPECT_EQ(maj_kstar(2), Rational(8, 3));
}

TEST(CertBrec2, TwentyWithAllGroupsValid) {
  const CommMatrix m = brec2_submatrix().first;
  const DualCertificate c = cert_brec2();
  EXPECT_EQ(c.cliques.size(), 12u);
  for (const auto& q : c.cliques) EXPECT_TRUE(validate_clique(m, q).empty());
  ASSERT_EQ(c.ranks.size(), 1u);
  EXPECT_EQ(c.ranks[0].alpha, 4);
  std::vector<int> witness;
  for (const auto& w : c.ranks[0].witness) witness.push_back(w.serial);
  EXPECT_EQ(witness, (std::vector<int>{9, 17, 25, 33, 41, 49, 57, 65, 73}));
  EXPECT_TRUE(validate_rank(m, c.ranks[0]).empty());
  const RankAlphaInfo info = rank_alpha_info(m, c.ranks[0]);
  EXPECT_EQ(info.matching_bound, 4);
  EXPECT_LE(info.span_mis, 4);
  const VerifyResult v = verify_certificate(m, c);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.objective, Rational(20));
}

TEST(CertBrec2, UnderclaimedAlphaIsRejected) {
  const CommMatrix m = brec2_submatrix().first;
  DualCertificate c = cert_brec2();
  c.ranks[0].alpha = 3;
  c.objective = certificate_objective(c);
  const VerifyResult v = verify_certificate(m, c);
  EXPECT_FALSE(v.feasible);
  EXPECT_EQ(v.violations.front().kind, "rank");
}

TEST(Schemes, BrecAtHeightTwoVerifies) {
  const SchemeResult r = cert_brec(2);
  EXPECT_TRUE(r.scheme_verified());
  EXPECT_EQ(r.certified(), Rational(1504, 81));
  EXPECT_GT(r.certified(), Rational(16));
}

TEST(Schemes, BrecAtHeightThreeScalesDown) {
  const DualCertificate s = brec_scheme(3);
  EXPECT_EQ(s.objective, Rational(17216, 243));
  const VerifyResult v = verify_certificate(brec_submatrix(3).first, s);
  EXPECT_FALSE(v.feasible);
  EXPECT_EQ(v.max_rect_value, Rational(832, 729));
}

TEST(Schemes, UrecMonotoneVerifies) {
  for (int h : {2, 3}) {
    const SchemeResult r = cert_urec(h, Mode::Monotone);
    EXPECT_TRUE(r.scheme_verified()) << h;
    EXPECT_EQ(r.certified(), urec_declared_objective(h)) << h;
  }
  EXPECT_EQ(urec_declared_objective(2), Rational(74, 9));
  EXPECT_EQ(urec_declared_objective(3), Rational(109, 9));
}

TEST(Schemes, UrecGeneralFallsBackAtHeightTwo) {
  const SchemeResult r = cert_urec(2, Mode::General);
  EXPECT_FALSE(r.scheme_verified());
  ASSERT_TRUE(r.fallback.has_value());
  EXPECT_EQ(r.certified(), Rational(26, 3));
  EXPECT_GE(r.certified(), Rational(74, 9));
  EXPECT_TRUE(verify_certificate(r.matrix, r.certificate()).feasible);
}

TEST(Tangency, ParabolaTouchesOneAtKstar) {
  const TangencyScheme t = TangencyScheme::at(Rational(8, 3));
  EXPECT_EQ(t.value_at(Rational(8, 3)), Rational(1));
  EXPECT_EQ(t.c(), Rational(2) * t.b());
  EXPECT_LE(t.max_over(100).first, Rational(1));
  EXPECT_THROW(TangencyScheme::at(Rational(0)), InvalidInput);
}

TEST(Tangency, BorderGrid) {
  EXPECT_FALSE(border_grid_violation(Rational(3), 3));
  // past k* the product (1 - x/k*)(1 - y/k*) can go negative
  EXPECT_EQ(border_grid_violation(Rational(3), 4), (std::pair<long, long>{0, 4}));
  EXPECT_EQ(border_pair_value(Rational(2), 2, 2), Rational(1));
}
