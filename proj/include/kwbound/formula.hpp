#pragma once

// De Morgan formulas: binary AND/OR trees over literals. Size is the number
// of leaves.

#include <cstdint>
#include <string>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/error.hpp"

namespace kwb {

class Formula {
 public:
  enum class Op : std::uint8_t { Leaf, And, Or };

  struct Node {
    Op op = Op::Leaf;
    int var = 0;  // 1-based, leaves only
    bool neg = false;
    int left = -1, right = -1;
  };

  static Formula literal(int var, bool neg = false) {
    require(var >= 1 && var <= kMaxVectorArity, "Formula: variable index out of range");
    Formula f;
    f.nodes_.push_back(Node{Op::Leaf, var, neg, -1, -1});
    return f;
  }
  static Formula conj(const Formula& a, const Formula& b) { return join(Op::And, a, b); }
  static Formula disj(const Formula& a, const Formula& b) { return join(Op::Or, a, b); }

  // Nodes in post-order; the root is the last node.
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.back(); }
  int root_index() const { return static_cast<int>(nodes_.size()) - 1; }
  bool empty() const { return nodes_.empty(); }

  int size() const {
    int leaves = 0;
    for (const auto& n : nodes_) leaves += n.op == Op::Leaf;
    return leaves;
  }

  bool is_monotone() const {
    for (const auto& n : nodes_)
      if (n.op == Op::Leaf && n.neg) return false;
    return true;
  }

  int max_var() const {
    int m = 0;
    for (const auto& n : nodes_)
      if (n.op == Op::Leaf) m = std::max(m, n.var);
    return m;
  }

  bool eval(std::uint32_t x) const {
    std::vector<char> val(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      switch (n.op) {
        case Op::Leaf: val[i] = static_cast<char>(((x >> (n.var - 1)) & 1u) != n.neg); break;
        case Op::And: val[i] = val[static_cast<std::size_t>(n.left)] && val[static_cast<std::size_t>(n.right)]; break;
        case Op::Or: val[i] = val[static_cast<std::size_t>(n.left)] || val[static_cast<std::size_t>(n.right)]; break;
      }
    }
    return val.back();
  }

  // 64 assignments at once (block w of an n-input table).
  std::uint64_t eval_block(std::uint64_t w) const {
    std::vector<std::uint64_t> val(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      switch (n.op) {
        case Op::Leaf: {
          const std::uint64_t v = detail::var_block(n.var - 1, w);
          val[i] = n.neg ? ~v : v;
          break;
        }
        case Op::And: val[i] = val[static_cast<std::size_t>(n.left)] & val[static_cast<std::size_t>(n.right)]; break;
        case Op::Or: val[i] = val[static_cast<std::size_t>(n.left)] | val[static_cast<std::size_t>(n.right)]; break;
      }
    }
    return val.back();
  }

  // Infix rendering, e.g. "((x1 & x2) | ((x1 | x2) & x3))".
  std::string str() const { return render(root_index()); }

  // Replace every leaf on `var` (which must appear only positively) by `sub`.
  Formula substitute(int var, const Formula& sub) const {
    Formula out;
    std::vector<int> remap(nodes_.size(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (n.op == Op::Leaf && n.var == var) {
        require(!n.neg, "substitute: negated occurrence");
        const int base = static_cast<int>(out.nodes_.size());
        for (Node s : sub.nodes_) {
          if (s.op != Op::Leaf) { s.left += base; s.right += base; }
          out.nodes_.push_back(s);
        }
        remap[i] = static_cast<int>(out.nodes_.size()) - 1;
      } else {
        Node c = n;
        if (c.op != Op::Leaf) {
          c.left = remap[static_cast<std::size_t>(n.left)];
          c.right = remap[static_cast<std::size_t>(n.right)];
        }
        out.nodes_.push_back(c);
        remap[i] = static_cast<int>(out.nodes_.size()) - 1;
      }
    }
    return out;
  }

  // Shift all variable indices by `offset`.
  Formula shifted(int offset) const {
    Formula out = *this;
    for (auto& n : out.nodes_)
      if (n.op == Op::Leaf) n.var += offset;
    return out;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.equal_at(a.root_index(), b, b.root_index());
  }

 private:
  static Formula join(Op op, const Formula& a, const Formula& b) {
    require(!a.empty() && !b.empty(), "Formula: empty operand");
    Formula f;
    f.nodes_ = a.nodes_;
    const int base = static_cast<int>(f.nodes_.size());
    for (Node n : b.nodes_) {
      if (n.op != Op::Leaf) { n.left += base; n.right += base; }
      f.nodes_.push_back(n);
    }
    f.nodes_.push_back(Node{op, 0, false, base - 1, static_cast<int>(f.nodes_.size()) - 1});
    return f;
  }

  std::string render(int i) const {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.op == Op::Leaf) return (n.neg ? "~x" : "x") + std::to_string(n.var);
    return "(" + render(n.left) + (n.op == Op::And ? " & " : " | ") + render(n.right) + ")";
  }

  bool equal_at(int i, const Formula& o, int j) const {
    const Node& a = nodes_[static_cast<std::size_t>(i)];
    const Node& b = o.nodes_[static_cast<std::size_t>(j)];
    if (a.op != b.op) return false;
    if (a.op == Op::Leaf) return a.var == b.var && a.neg == b.neg;
    return equal_at(a.left, o, b.left) && equal_at(a.right, o, b.right);
  }

  std::vector<Node> nodes_;
};

inline int formula_size(const Formula& f) { return f.size(); }

// A formula read as a function of n inputs.
class FormulaSource {
 public:
  FormulaSource(const Formula& f, int n) : f_(f), n_(n) {
    require(f.max_var() <= n, "formula_to_function: variable index exceeds arity");
  }
  int arity() const { return n_; }
  bool eval(std::uint32_t x) const { return f_.eval(x); }
  std::uint64_t block(std::uint64_t w) const { return f_.eval_block(w) & detail::block_mask(n_); }

 private:
  const Formula& f_;
  int n_;
};

inline BooleanFunction formula_to_function(const Formula& f, int n) {
  return BooleanFunction::from_source(FormulaSource(f, n));
}

// (x1 & x2) | ((x1 | x2) & x3)
inline Formula maj3_formula(const Formula& a, const Formula& b, const Formula& c) {
  return Formula::disj(Formula::conj(a, b), Formula::conj(Formula::disj(a, b), c));
}

inline Formula maj3_formula() {
  return maj3_formula(Formula::literal(1), Formula::literal(2), Formula::literal(3));
}

// (x_{2h} & x_{2h+1}) | ((x_{2h} | x_{2h+1}) & F_{h-1}); size 4h+1.
inline Formula urec_formula(int h) {
  require(h >= 1 && 2 * h + 1 <= kMaxVectorArity, "urec_formula: height out of range");
  Formula f = maj3_formula();
  for (int l = 2; l <= h; ++l)
    f = maj3_formula(Formula::literal(2 * l), Formula::literal(2 * l + 1), f);
  return f;
}

// MAJ3 pattern over the three sub-blocks; the third operand is read once, so
// the size is 5^h.
inline Formula brec_formula(int h) {
  require(h >= 1 && h <= 3, "brec_formula: height must be 1..3");
  Formula f = maj3_formula();
  int width = 3;
  for (int l = 2; l <= h; ++l) {
    f = maj3_formula(f, f.shifted(width), f.shifted(2 * width));
    width *= 3;
  }
  return f;
}

}  // namespace kwb
