#pragma once

// Weight schemes of the form "a on singleton cells, b on the other cells of a
// block": a rectangle holding k singletons of one index also holds at least
// k^2 - k non-singleton cells of the block, so its weight is at most
// k a + (k^2 - k) b. Choosing the parabola tangent to 1 at k* gives
//   a = (2k* - 1) / k*^2,   b = -1 / k*^2,
// and then k a + (k^2 - k) b = 1 - ((k - k*) / k*)^2 <= 1 for every real k.

#include <optional>
#include <utility>

#include "kwbound/error.hpp"
#include "kwbound/rational.hpp"

namespace kwb {

struct TangencyScheme {
  Rational kstar;

  static TangencyScheme at(Rational k) {
    require(k.sign() > 0, "TangencyScheme: kstar must be positive");
    return TangencyScheme{std::move(k)};
  }

  Rational a() const { return (Rational(2) * kstar - Rational(1)) / (kstar * kstar); }
  Rational b() const { return -Rational(1) / (kstar * kstar); }
  // multiplier for clique and rank rows that replace non-singleton weights
  Rational c() const { return Rational(2) * b(); }

  Rational value_at(const Rational& k) const { return k * a() + (k * k - k) * b(); }

  // Largest value over integers 1..kmax, with the first k attaining it.
  std::pair<Rational, long> max_over(long kmax) const {
    require(kmax >= 1, "TangencyScheme: empty range");
    std::pair<Rational, long> best{value_at(Rational(1)), 1};
    for (long k = 2; k <= kmax; ++k)
      if (auto v = value_at(Rational(k)); v > best.first) best = {std::move(v), k};
    return best;
  }
};

// Weight of a rectangle picking x vertical and y horizontal border cells at
// weight 1/k* each, while also covering x*y cells at weight -1/k*^2:
//   (x + y)/k* - xy/k*^2 = 1 - (1 - x/k*)(1 - y/k*).
inline Rational border_pair_value(const Rational& kstar, long x, long y) {
  return Rational(x + y) / kstar - Rational(x * y) / (kstar * kstar);
}

// First grid point 0 <= x, y <= limit whose border value exceeds 1.
inline std::optional<std::pair<long, long>> border_grid_violation(const Rational& kstar, long limit) {
  for (long x = 0; x <= limit; ++x)
    for (long y = 0; y <= limit; ++y)
      if (border_pair_value(kstar, x, y) > 1) return std::pair{x, y};
  return std::nullopt;
}

}  // namespace kwb
