#pragma once

// Exhaustive minimum formula size for functions of at most five inputs.
//
// Level s holds every truth table whose smallest (monotone) formula has
// exactly s leaves. Level 1 is the literals; level s combines level i with
// level s-i under AND and OR for i <= s/2. Tables are deduplicated, and the
// first witness recorded for a table is minimal because levels are built in
// increasing size.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/error.hpp"
#include "kwbound/formula.hpp"

namespace kwb {

struct FormulaSearchOptions {
  bool monotone_only = false;
  int size_cap = 10;
  std::size_t max_tables = std::size_t{1} << 24;     // memory budget
  std::uint64_t max_combinations = 4'000'000'000ull;  // work budget
};

struct FormulaSizeResult {
  std::optional<int> size;      // empty: exceeds cap or budget
  bool budget_exhausted = false;
  std::optional<Formula> witness;
};

class FormulaSizeOracle {
 public:
  FormulaSizeOracle(int n, FormulaSearchOptions opts) : n_(n), opts_(opts) {
    require(n >= 1 && n <= 5, "brute_force_formula_size: arity must be 1..5");
    require(opts.size_cap >= 1 && opts.size_cap <= 10, "brute_force_formula_size: cap must be 1..10");
    mask_ = n == 5 ? 0xFFFFFFFFu : ((1u << (1u << n)) - 1);
    levels_.emplace_back();  // level 0 unused
    levels_.emplace_back();
    for (int v = 1; v <= n; ++v) {
      const auto t = static_cast<std::uint32_t>(detail::var_block(v - 1, 0) & mask_);
      add(t, Entry{1, Formula::Op::Leaf, static_cast<std::uint8_t>(v), false, 0, 0});
      if (!opts_.monotone_only)
        add(~t & mask_, Entry{1, Formula::Op::Leaf, static_cast<std::uint8_t>(v), true, 0, 0});
    }
  }

  int arity() const { return n_; }
  int levels_built() const { return complete_levels_; }
  bool budget_exhausted() const { return exhausted_; }
  std::uint32_t mask() const { return mask_; }

  // Builds levels until `table` appears, the cap is reached, or the budget
  // runs out.
  FormulaSizeResult find(std::uint32_t table) {
    table &= mask_;
    while (!seen_.contains(table) && levels_built() < opts_.size_cap && !exhausted_)
      build_level(table);
    FormulaSizeResult r;
    r.budget_exhausted = exhausted_;
    if (auto it = seen_.find(table); it != seen_.end()) {
      r.size = it->second.size;
      r.witness = witness(table);
    }
    return r;
  }

  void build_all() {
    while (levels_built() < opts_.size_cap && !exhausted_) build_level(std::nullopt);
  }

  std::optional<int> size_of(std::uint32_t table) const {
    if (auto it = seen_.find(table & mask_); it != seen_.end()) return it->second.size;
    return std::nullopt;
  }

  Formula witness(std::uint32_t table) const {
    const Entry& e = seen_.at(table & mask_);
    if (e.op == Formula::Op::Leaf) return Formula::literal(e.var, e.neg);
    const Formula l = witness(e.left), r = witness(e.right);
    return e.op == Formula::Op::And ? Formula::conj(l, r) : Formula::disj(l, r);
  }

 private:
  struct Entry {
    std::uint8_t size;
    Formula::Op op;
    std::uint8_t var;
    bool neg;
    std::uint32_t left, right;
  };

  bool add(std::uint32_t t, Entry e) {
    if (!seen_.emplace(t, e).second) return false;
    levels_[e.size].push_back(t);
    if (seen_.size() > opts_.max_tables) exhausted_ = true;
    return true;
  }

  void build_level(std::optional<std::uint32_t> target) {
    // a level left partial by an early exit is resumed from scratch; add()
    // deduplicates
    const int s = complete_levels_ + 1;
    if (static_cast<int>(levels_.size()) <= s) levels_.emplace_back();
    for (int i = 1; i <= s / 2; ++i) {
      const auto& a_list = levels_[static_cast<std::size_t>(i)];
      const auto& b_list = levels_[static_cast<std::size_t>(s - i)];
      for (std::size_t ai = 0; ai < a_list.size(); ++ai) {
        const std::uint32_t a = a_list[ai];
        for (std::size_t bi = (i == s - i ? ai : 0); bi < b_list.size(); ++bi) {
          const std::uint32_t b = b_list[bi];
          if (++work_ > opts_.max_combinations) { exhausted_ = true; return; }
          add(a & b, Entry{static_cast<std::uint8_t>(s), Formula::Op::And, 0, false, a, b});
          add(a | b, Entry{static_cast<std::uint8_t>(s), Formula::Op::Or, 0, false, a, b});
          if (exhausted_) return;
          if (target && seen_.contains(*target)) return;
        }
      }
    }
    complete_levels_ = s;
  }

  int n_;
  FormulaSearchOptions opts_;
  std::uint32_t mask_ = 0;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::unordered_map<std::uint32_t, Entry> seen_;
  std::uint64_t work_ = 0;
  int complete_levels_ = 1;
  bool exhausted_ = false;
};

inline std::uint32_t small_table(const BooleanFunction& f) {
  require(f.arity() <= 5, "small_table: arity must be at most 5");
  return static_cast<std::uint32_t>(f.block(0));
}

inline FormulaSizeResult brute_force_formula_size(const BooleanFunction& f, bool monotone_only,
                                                  int size_cap = 10,
                                                  FormulaSearchOptions opts = {}) {
  opts.monotone_only = monotone_only;
  opts.size_cap = size_cap;
  FormulaSizeOracle oracle(f.arity(), opts);
  return oracle.find(small_table(f));
}

}  // namespace kwb
