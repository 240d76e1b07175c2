#pragma once

// Boolean functions as truth tables, the three majority families, and
// minterm/maxterm extraction.
//
// Assignment encoding: variable i (1-based) is bit i-1 of the assignment
// index. Bit strings print variable 1 leftmost, so "110" is x1=1, x2=1, x3=0
// and has encoding 0b011 = 3.

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kwbound/error.hpp"

namespace kwb {

inline constexpr int kMaxTableArity = 24;
inline constexpr int kMaxVectorArity = 32;

struct BitVector {
  int n = 0;
  std::uint32_t bits = 0;

  BitVector() = default;
  BitVector(int arity, std::uint32_t value) : n(arity), bits(value) {
    require(arity >= 1 && arity <= kMaxVectorArity, "BitVector: arity out of range");
    if (arity < 32) require((value >> arity) == 0, "BitVector: bits above arity");
  }

  // "110" or "110,110,000"; variable 1 is the leftmost character.
  static BitVector parse(std::string_view text) {
    std::uint32_t v = 0;
    int n = 0;
    for (char ch : text) {
      if (ch == ',' || ch == ' ') continue;
      require(ch == '0' || ch == '1', "BitVector: bad character in '" + std::string(text) + "'");
      require(n < kMaxVectorArity, "BitVector: too many bits");
      if (ch == '1') v |= 1u << n;
      ++n;
    }
    return BitVector(n, v);
  }

  // 1-based variable access.
  bool operator[](int var) const { return (bits >> (var - 1)) & 1u; }
  int weight() const { return std::popcount(bits); }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

namespace detail {

// Bit patterns of variables 1..6 across the 64 assignments of one block.
inline constexpr std::array<std::uint64_t, 6> kVarPattern = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

// Value of variable v (0-based bit) over block w, bit-sliced.
inline std::uint64_t var_block(int v, std::uint64_t w) {
  if (v < 6) return kVarPattern[static_cast<std::size_t>(v)];
  return ((w >> (v - 6)) & 1u) ? ~0ull : 0ull;
}

inline std::uint64_t maj3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return (a & b) | (a & c) | (b & c);
}

inline std::uint64_t block_mask(int n) {
  return n >= 6 ? ~0ull : ((1ull << (1u << n)) - 1);
}

inline std::uint64_t block_count(int n) { return n >= 6 ? (1ull << (n - 6)) : 1; }

}  // namespace detail

// Anything that can report its truth table 64 assignments at a time.
// Block w covers assignments 64w .. 64w+63; for arity < 6 only block 0
// exists and bits above 2^n are zero.
template <class T>
concept TruthSource = requires(const T& t, std::uint64_t w, std::uint32_t x) {
  { t.arity() } -> std::convertible_to<int>;
  { t.block(w) } -> std::convertible_to<std::uint64_t>;
  { t.eval(x) } -> std::convertible_to<bool>;
};

class BooleanFunction {
 public:
  BooleanFunction() = default;
  explicit BooleanFunction(int n) : n_(n) {
    require(n >= 1 && n <= kMaxTableArity, "BooleanFunction: arity must be 1..24");
    words_.assign(detail::block_count(n), 0);
  }

  template <TruthSource S>
  static BooleanFunction from_source(const S& src) {
    BooleanFunction f(src.arity());
    const std::uint64_t mask = detail::block_mask(f.n_);
    for (std::uint64_t w = 0; w < f.words_.size(); ++w) f.words_[w] = src.block(w) & mask;
    return f;
  }

  template <class Pred>
  static BooleanFunction from_predicate(int n, Pred&& pred) {
    BooleanFunction f(n);
    for (std::uint64_t x = 0; x < (1ull << n); ++x)
      if (pred(static_cast<std::uint32_t>(x))) f.words_[x >> 6] |= 1ull << (x & 63);
    return f;
  }

  int arity() const { return n_; }
  std::uint64_t size() const { return 1ull << n_; }
  std::uint64_t block(std::uint64_t w) const { return words_[w]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool eval(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  bool evaluate(const BitVector& x) const {
    if (x.n != n_)
      throw InvalidInput("evaluate: arity mismatch (" + std::to_string(x.n) + " vs " +
                         std::to_string(n_) + ")");
    return eval(x.bits);
  }
  void set(std::uint32_t x, bool v) {
    if (v) words_[x >> 6] |= 1ull << (x & 63);
    else words_[x >> 6] &= ~(1ull << (x & 63));
  }

  std::uint64_t count_ones() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  // Little-endian by assignment index: byte k holds assignments 8k..8k+7,
  // assignment 8k+j at bit j; bytes are written in increasing k.
  std::string table_hex() const {
    static constexpr char kHex[] = "0123456789abcdef";
    const std::uint64_t nbytes = std::max<std::uint64_t>(1, size() / 8);
    std::string out;
    out.reserve(nbytes * 2);
    for (std::uint64_t k = 0; k < nbytes; ++k) {
      const auto byte = static_cast<unsigned>((words_[k / 8] >> ((k % 8) * 8)) & 0xFF);
      out += kHex[byte >> 4];
      out += kHex[byte & 15];
    }
    return out;
  }

  static BooleanFunction from_hex(int n, std::string_view hex) {
    BooleanFunction f(n);
    const std::uint64_t nbytes = std::max<std::uint64_t>(1, f.size() / 8);
    require(hex.size() == nbytes * 2, "table_hex: wrong length for arity");
    auto nib = [](char c) -> unsigned {
      if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
      if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
      if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
      throw InvalidInput("table_hex: bad digit");
    };
    for (std::uint64_t k = 0; k < nbytes; ++k) {
      const std::uint64_t byte = (nib(hex[2 * k]) << 4) | nib(hex[2 * k + 1]);
      f.words_[k / 8] |= byte << ((k % 8) * 8);
    }
    require((f.words_.back() & ~detail::block_mask(n)) == 0, "table_hex: bits beyond 2^n");
    return f;
  }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Exhaustive monotonicity via single-bit flips: f(x) <= f(x | e_v) for all
// x with x_v = 0 and all v.
template <TruthSource S>
bool is_monotone(const S& f) {
  const int n = f.arity();
  const std::uint64_t blocks = detail::block_count(n);
  for (std::uint64_t w = 0; w < blocks; ++w) {
    const std::uint64_t word = f.block(w);
    for (int v = 0; v < std::min(n, 6); ++v) {
      const std::uint64_t p = detail::kVarPattern[static_cast<std::size_t>(v)];
      const std::uint64_t lo = word & ~p;
      const std::uint64_t hi = (word & p) >> (1u << v);
      if (lo & ~hi & detail::block_mask(n)) return false;
    }
    for (int v = 6; v < n; ++v) {
      const std::uint64_t bit = 1ull << (v - 6);
      if (w & bit) continue;
      if (word & ~f.block(w | bit)) return false;
    }
  }
  return true;
}

// f(x) = not f(not x) for every x.
template <TruthSource S>
bool is_self_dual(const S& f) {
  const int n = f.arity();
  if (n < 6) {
    const std::uint32_t all = (1u << n) - 1;
    for (std::uint32_t x = 0; x <= all; ++x)
      if (f.eval(x) == f.eval(all ^ x)) return false;
    return true;
  }
  const std::uint64_t blocks = detail::block_count(n);
  for (std::uint64_t w = 0; w < blocks; ++w) {
    // complement of assignment 64w+j is 64(blocks-1-w) + (63-j)
    const std::uint64_t mirror = std::uint64_t{f.block(blocks - 1 - w)};
    std::uint64_t rev = 0;
    for (int j = 0; j < 64; ++j) rev |= ((mirror >> j) & 1u) << (63 - j);
    if (f.block(w) != ~rev) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The three families.

inline BooleanFunction maj(int n) {
  require(n >= 1 && n <= 23 && n % 2 == 1, "maj: arity must be odd and in 1..23");
  const int threshold = n / 2 + 1;
  return BooleanFunction::from_predicate(
      n, [&](std::uint32_t x) { return std::popcount(x) >= threshold; });
}

namespace detail {
inline bool maj3_bit(bool a, bool b, bool c) { return (a && b) || (a && c) || (b && c); }
}  // namespace detail

// Unbalanced recursion: MAJ3(U_{h-1}(x1..x_{2h-1}), x_{2h}, x_{2h+1}).
class UrecMajority {
 public:
  explicit UrecMajority(int h) : h_(h) {
    require(h >= 1 && 2 * h + 1 <= 31, "urec_maj: height out of range");
  }
  int arity() const { return 2 * h_ + 1; }
  int height() const { return h_; }
  bool eval(std::uint32_t x) const {
    bool acc = detail::maj3_bit(x & 1u, (x >> 1) & 1u, (x >> 2) & 1u);
    for (int l = 2; l <= h_; ++l)
      acc = detail::maj3_bit(acc, (x >> (2 * l - 1)) & 1u, (x >> (2 * l)) & 1u);
    return acc;
  }
  std::uint64_t block(std::uint64_t w) const {
    if (arity() < 6) return BooleanFunction::from_predicate(arity(), [&](auto x) { return eval(x); }).block(0);
    std::uint64_t acc = detail::maj3(detail::var_block(0, w), detail::var_block(1, w),
                                     detail::var_block(2, w));
    for (int l = 2; l <= h_; ++l)
      acc = detail::maj3(acc, detail::var_block(2 * l - 1, w), detail::var_block(2 * l, w));
    return acc;
  }

 private:
  int h_;
};

// Balanced recursion over 3^h inputs; evaluated on demand (h = 3 has 27
// inputs and is never materialized).
class BrecMajority {
 public:
  explicit BrecMajority(int h) : h_(h) { require(h >= 1 && h <= 3, "brec_maj: height must be 1..3"); }
  int arity() const {
    int n = 1;
    for (int i = 0; i < h_; ++i) n *= 3;
    return n;
  }
  int height() const { return h_; }
  bool eval(std::uint32_t x) const {
    int n = arity();
    std::uint32_t level = x;
    while (n > 1) {
      std::uint32_t next = 0;
      for (int b = 0; b < n / 3; ++b) {
        const std::uint32_t t = (level >> (3 * b)) & 7u;
        if (std::popcount(t) >= 2) next |= 1u << b;
      }
      level = next;
      n /= 3;
    }
    return level & 1u;
  }
  std::uint64_t block(std::uint64_t w) const {
    const int n = arity();
    if (n < 6) return BooleanFunction::from_predicate(n, [&](auto x) { return eval(x); }).block(0);
    std::array<std::uint64_t, 27> level{};
    for (int v = 0; v < n; ++v) level[static_cast<std::size_t>(v)] = detail::var_block(v, w);
    for (int m = n; m > 1; m /= 3)
      for (int b = 0; b < m / 3; ++b)
        level[static_cast<std::size_t>(b)] =
            detail::maj3(level[static_cast<std::size_t>(3 * b)], level[static_cast<std::size_t>(3 * b + 1)],
                         level[static_cast<std::size_t>(3 * b + 2)]);
    return level[0];
  }

 private:
  int h_;
};

inline BooleanFunction urec_maj(int h) {
  require(h >= 1 && 2 * h + 1 <= 23, "urec_maj: need 1 <= h and 2h+1 <= 23");
  return BooleanFunction::from_source(UrecMajority(h));
}

inline BooleanFunction brec_maj(int h) {
  require(h >= 1 && h <= 2, "brec_maj: tables exist for h = 1, 2 (use BrecMajority for h = 3)");
  return BooleanFunction::from_source(BrecMajority(h));
}

// ---------------------------------------------------------------------------
// Minterms and maxterms.

enum class TermKind { Minterm, Maxterm };

struct TermList {
  TermKind kind = TermKind::Minterm;
  std::vector<BitVector> terms;  // ascending by encoding

  std::size_t size() const { return terms.size(); }
  friend bool operator==(const TermList&, const TermList&) = default;
};

template <TruthSource S>
bool is_minterm(const S& f, std::uint32_t x) {
  if (!f.eval(x)) return false;
  for (std::uint32_t rest = x; rest; rest &= rest - 1)
    if (f.eval(x & ~(rest & -rest))) return false;
  return true;
}

template <TruthSource S>
bool is_maxterm(const S& f, std::uint32_t x) {
  if (f.eval(x)) return false;
  const int n = f.arity();
  const std::uint32_t all = n >= 32 ? ~0u : ((1u << n) - 1);
  for (std::uint32_t rest = all & ~x; rest; rest &= rest - 1)
    if (!f.eval(x | (rest & -rest))) return false;
  return true;
}

inline TermList minterms(const BooleanFunction& f) {
  require(is_monotone(f), "minterms: function is not monotone");
  TermList out{TermKind::Minterm, {}};
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (is_minterm(f, static_cast<std::uint32_t>(x)))
      out.terms.emplace_back(f.arity(), static_cast<std::uint32_t>(x));
  return out;
}

inline TermList maxterms(const BooleanFunction& f) {
  require(is_monotone(f), "maxterms: function is not monotone");
  TermList out{TermKind::Maxterm, {}};
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (is_maxterm(f, static_cast<std::uint32_t>(x)))
      out.terms.emplace_back(f.arity(), static_cast<std::uint32_t>(x));
  return out;
}

// Terms of BRecMAJ_3^h built from the read-once structure: a minterm of
// MAJ3(g1,g2,g3) sets one child all-zero and takes a minterm of each of the
// other two (dually for maxterms, with one child all-one). Each term is re-validated
// against the evaluator.
inline TermList brec_terms(int h, TermKind kind) {
  const BrecMajority f(h);
  const bool mins = kind == TermKind::Minterm;
  std::vector<std::uint32_t> cur = mins ? std::vector<std::uint32_t>{0b011, 0b101, 0b110}
                                        : std::vector<std::uint32_t>{0b001, 0b010, 0b100};
  int width = 3;
  for (int level = 2; level <= h; ++level) {
    const std::uint32_t full = (1u << width) - 1;
    const std::uint32_t fill = mins ? 0u : full;
    std::vector<std::uint32_t> next;
    for (int special = 0; special < 3; ++special) {
      std::vector<std::uint32_t> partial{0};
      for (int child = 0; child < 3; ++child) {
        std::vector<std::uint32_t> grown;
        for (auto p : partial) {
          if (child == special) {
            grown.push_back(p | (fill << (child * width)));
          } else {
            for (auto t : cur) grown.push_back(p | (t << (child * width)));
          }
        }
        partial = std::move(grown);
      }
      next.insert(next.end(), partial.begin(), partial.end());
    }
    cur = std::move(next);
    width *= 3;
  }
  TermList out{kind, {}};
  for (auto t : cur) {
    const bool ok = mins ? is_minterm(f, t) : is_maxterm(f, t);
    if (!ok) throw std::logic_error("brec_terms: structural term failed validation");
    out.terms.emplace_back(f.arity(), t);
  }
  std::sort(out.terms.begin(), out.terms.end());
  out.terms.erase(std::unique(out.terms.begin(), out.terms.end()), out.terms.end());
  return out;
}

}  // namespace kwb
