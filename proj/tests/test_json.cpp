#include <gtest/gtest.h>

#include "kwbound/builders.hpp"
#include "kwbound/json_io.hpp"
#include "kwbound/report.hpp"

using namespace kwb;

TEST(Json, FunctionRoundTrip) {
  for (const auto& f : {maj(3), urec_maj(3), brec_maj(2)}) EXPECT_EQ(function_from_json(Json::parse(to_json(f).dump())), f);
}

TEST(Json, FormulaRoundTrip) {
  const Formula f = urec_formula(3);
  const Formula g = formula_from_json(Json::parse(to_json(f).dump()));
  EXPECT_EQ(g.str(), f.str());
  EXPECT_EQ(formula_to_function(g, 7), urec_maj(3));
}

TEST(Json, MatrixRoundTrip) {
  for (const auto& m : {maj_matrix(1), maj_matrix(2), brec2_submatrix().first})
    EXPECT_EQ(matrix_from_json(Json::parse(to_json(m).dump())), m);
}

TEST(Json, MatrixCellsAreChecked) {
  Json j = to_json(maj_matrix(1));
  j["cells"][0][0] = Json::array({1});
  EXPECT_THROW(matrix_from_json(j), InvalidInput);
}

TEST(Json, CertificateRoundTrip) {
  const CommMatrix m = brec2_submatrix().first;
  const DualCertificate c = cert_brec2();
  const DualCertificate back = certificate_from_json(Json::parse(to_json(c).dump()), m);
  EXPECT_EQ(back.weights, c.weights);
  EXPECT_EQ(back.objective, c.objective);
  ASSERT_EQ(back.cliques.size(), c.cliques.size());
  EXPECT_EQ(back.cliques[3].pairs, c.cliques[3].pairs);
  ASSERT_EQ(back.ranks.size(), 1u);
  EXPECT_EQ(back.ranks[0].alpha, 4);
  EXPECT_TRUE(verify_certificate(m, back).feasible);

  const auto [m2, c2] = certificate_with_matrix_from_json(Json::parse(to_json(c, &m).dump()));
  EXPECT_EQ(m2, m);
  EXPECT_EQ(c2.weights, c.weights);
}

TEST(Json, MalformedInputIsInvalid) {
  EXPECT_THROW(function_from_json(Json::parse(R"({"n": 3})")), InvalidInput);
  EXPECT_THROW(function_from_json(Json::parse(R"({"n": 3, "table_hex": "e"})")), InvalidInput);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"weights": ["1/0"]})"), maj_matrix(1)), std::exception);
}

TEST(Json, LinearProgramRoundTrip) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  const int x = lp.add_var("x", VarBound::NonNegative, 3);
  const int y = lp.add_var("y", VarBound::Free, Rational(5, 2));
  lp.add_constraint({{x, 1}, {y, 1}}, Relation::LessEq, 4, "cap");
  lp.add_constraint({{y, 1}}, Relation::GreaterEq, Rational(-1, 3));
  const Json j = to_json(lp);
  const LinearProgram back = lp_from_json(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(simplex_solve(back).objective, simplex_solve(lp).objective);
}

TEST(Report, DeterministicWithoutTiming) {
  const auto a = emit(report("maj", 1, all_methods()), "json", false);
  const auto b = emit(report("maj", 1, all_methods()), "json", false);
  EXPECT_EQ(a, b);
  const Json j = Json::parse(a);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["value_exact"], "9/2");
}

TEST(Report, CsvColumns) {
  const std::string csv = emit_csv(report("maj", 1, {"lp"}), false);
  EXPECT_EQ(csv, "family,param,method,value_exact,value_decimal,integral_bound,status,ms\n"
                 "maj,1,lp,9/2,4.5000000000,5,exact,\n");
}
