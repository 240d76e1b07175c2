#pragma once

// Maximum independent set (stability number) of graphs with at most 60
// vertices: branch and bound with a greedy clique-cover upper bound.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "kwbound/error.hpp"

namespace kwb {

struct IndependentSet {
  int size = 0;
  std::vector<int> vertices;  // ascending
};

namespace detail {

class MisSearch {
 public:
  MisSearch(int n, const std::vector<std::pair<int, int>>& edges) : adj_(static_cast<std::size_t>(n), 0) {
    for (const auto& [u, v] : edges) {
      require(u >= 0 && u < n && v >= 0 && v < n, "max_independent_set: vertex out of range");
      if (u == v) continue;
      adj_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
      adj_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
  }

  IndependentSet run(int n) {
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    expand(all, 0, 0);
    IndependentSet out;
    out.size = best_size_;
    for (std::uint64_t s = best_; s; s &= s - 1) out.vertices.push_back(std::countr_zero(s));
    return out;
  }

 private:
  // Number of cliques in a greedy partition of `p` into cliques; an
  // independent set takes at most one vertex from each.
  int clique_cover(std::uint64_t p) const {
    int cliques = 0;
    while (p) {
      std::uint64_t cand = p;
      while (cand) {
        const int v = std::countr_zero(cand);
        p &= ~(std::uint64_t{1} << v);
        cand &= adj_[static_cast<std::size_t>(v)];
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(std::uint64_t p, std::uint64_t chosen, int size) {
    if (!p) {
      if (size > best_size_) {
        best_size_ = size;
        best_ = chosen;
      }
      return;
    }
    if (size + clique_cover(p) <= best_size_) return;
    // branch on the vertex of maximum degree within p
    int v = -1, deg = -1;
    for (std::uint64_t s = p; s; s &= s - 1) {
      const int u = std::countr_zero(s);
      const int d = std::popcount(adj_[static_cast<std::size_t>(u)] & p);
      if (d > deg) { deg = d; v = u; }
    }
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (deg == 0) {
      // all remaining vertices are isolated: take them all
      expand(0, chosen | p, size + std::popcount(p));
      return;
    }
    expand(p & ~bit & ~adj_[static_cast<std::size_t>(v)], chosen | bit, size + 1);
    expand(p & ~bit, chosen, size);
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t best_ = 0;
  int best_size_ = -1;
};

}  // namespace detail

inline constexpr int kMaxStableSetVertices = 60;

inline IndependentSet max_independent_set(int n, const std::vector<std::pair<int, int>>& edges) {
  require(n >= 0 && n <= kMaxStableSetVertices, "max_independent_set: at most 60 vertices");
  if (n == 0) return {};
  detail::MisSearch s(n, edges);
  return s.run(n);
}

}  // namespace kwb
