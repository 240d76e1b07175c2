#pragma once

// Exact rational numbers backed by GMP.
//
// Every bound value, LP coefficient and certificate weight in kwbound is a
// Rational. Values are always canonical (gcd 1, positive denominator) and the
// textual form is "p/q", with "/1" kept for integers so documents compare
// byte-for-byte.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kwb {

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}                       // NOLINT(implicit)
  Rational(int v) : v_(v) {}                        // NOLINT(implicit)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Accepts "p/q", "p" or "-p/q" (whitespace not allowed).
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    const std::string s(text);
    const auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
      if (part.empty()) throw std::invalid_argument("Rational: malformed '" + s + "'");
      std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
      if (i == part.size()) throw std::invalid_argument("Rational: malformed '" + s + "'");
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9')
          throw std::invalid_argument("Rational: malformed '" + s + "'");
    };
    if (slash == std::string::npos) {
      check_int(s);
      return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num, 10), d);
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
  }
  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
  }

  std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Rounded decimal rendering for display only, e.g. 74/9 -> "8.2222222222".
  std::string decimal(int digits = 10) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = abs(v_) * scale;
    // round half up on the magnitude
    mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string digits_str = q.get_str();
    if (static_cast<int>(digits_str.size()) <= digits)
      digits_str.insert(0, static_cast<std::size_t>(digits + 1 - digits_str.size()), '0');
    std::string out = sign() < 0 && q != 0 ? "-" : "";
    out += digits_str.substr(0, digits_str.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + digits_str.substr(digits_str.size() - static_cast<std::size_t>(digits));
    return out;
  }

  double to_double() const { return v_.get_d(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

inline Rational pow(const Rational& base, unsigned exp) {
  Rational r(1);
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

// Closest fraction to x with denominator at most max_den (continued
// fractions; ties go to the later convergent).
inline mpq_class limit_denominator(const mpq_class& x, const mpz_class& max_den) {
  if (x.get_den() <= max_den) return x;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0, n = x.get_num(), d = x.get_den();
  for (;;) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const mpz_class q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const mpz_class r = n - a * d;
    n = d;
    d = r;
  }
  const mpz_class k = (max_den - q0) / q1;
  mpq_class b1(p0 + k * p1, q0 + k * q1), b2(p1, q1);
  b1.canonicalize();
  b2.canonicalize();
  return abs(b2 - x) <= abs(b1 - x) ? b2 : b1;
}

}  // namespace kwb
