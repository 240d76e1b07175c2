#include <gtest/gtest.h>

#include "kwbound/builders.hpp"
#include "kwbound/submatrices.hpp"
#include "kwbound/tangency.hpp"

using namespace kwb;

namespace {
std::vector<Rational> scheme_kstars() {
  std::vector<Rational> out;
  for (int l = 1; l <= 3; ++l) out.push_back(maj_kstar(l));
  for (int h = 1; h <= 4; ++h) out.push_back(Rational(3) * pow(Rational(2), static_cast<unsigned>(h)) / Rational(4));
  for (int h = 1; h <= 3; ++h) out.push_back(pow(Rational(3, 2), static_cast<unsigned>(h)));
  return out;
}
}  // namespace

// k a + (k^2 - k) b <= 1 for every integer k, with equality only at k = k*.
TEST(TangencyProperty, IntegerPointsStayBelowOne) {
  for (const Rational& ks : scheme_kstars()) {
    const TangencyScheme t = TangencyScheme::at(ks);
    for (long k = 0; k <= 400; ++k) {
      const Rational v = t.value_at(Rational(k));
      ASSERT_LE(v, Rational(1)) << ks.str() << " k=" << k;
      if (v == Rational(1)) {
        EXPECT_EQ(Rational(k), ks);
      }
    }
  }
}

// (x + y)/k* - xy/k*^2 <= 1 over the integer grid 0 <= x, y <= k* of the
// URec border, k* = 3 * 2^(h-2).
TEST(TangencyProperty, BorderInequalityOnGrid) {
  for (int h = 2; h <= 8; ++h) {
    const long ks = 3L << (h - 2);
    EXPECT_FALSE(border_grid_violation(Rational(ks), ks)) << h;
    for (long x = 0; x <= ks; ++x)
      for (long y = 0; y <= ks; ++y)
        ASSERT_EQ(border_pair_value(Rational(ks), x, y),
                  Rational(1) - (Rational(1) - Rational(x, ks)) * (Rational(1) - Rational(y, ks)));
  }
}

TEST(TangencyProperty, BorderBreaksPastKstar) {
  EXPECT_TRUE(border_grid_violation(Rational(3), 4));
}

// Two singleton cells of different indices never lie in one monochromatic rectangle.
TEST(SingletonProperty, ExclusivityOverEnumeratedRects) {
  std::vector<CommMatrix> ms{maj_matrix(1), maj_matrix(2), brec2_submatrix().first, urec_submatrix(2).first,
                             urec_submatrix(2, Mode::Monotone).first};
  for (const auto& m : ms) {
    const auto singles = singleton_cells(m);
    for (const auto& r : enumerate_all_mono_rects(m)) {
      int index = 0;
      for (const auto& s : singles) {
        if (!r.contains(m, s.cell)) continue;
        ASSERT_EQ(s.index, r.color) << m.provenance();
        if (index) {
          ASSERT_EQ(index, s.index);
        }
        index = s.index;
      }
    }
  }
}

// Self-duality forces as many minterms as maxterms.
TEST(TermsProperty, MintermsEqualMaxterms) {
  for (int l = 1; l <= 5; ++l) {
    const BooleanFunction f = maj(2 * l + 1);
    EXPECT_EQ(minterms(f).size(), maxterms(f).size()) << "maj " << l;
  }
  for (int h = 1; h <= 3; ++h) {
    const BooleanFunction f = urec_maj(h);
    EXPECT_EQ(minterms(f).size(), maxterms(f).size()) << "urec " << h;
  }
  for (int h = 1; h <= 3; ++h)
    EXPECT_EQ(brec_terms(h, TermKind::Minterm).size(), brec_terms(h, TermKind::Maxterm).size()) << "brec " << h;
  EXPECT_EQ(brec_terms(2, TermKind::Minterm).size(), 27u);
}
