#pragma once

// Double-precision revised simplex used only to *propose* a basis for the
// exact rectangle LP. Nothing it computes is trusted: the caller re-solves
// the proposed basis in rational arithmetic, checks primal feasibility and
// every reduced cost exactly, and falls back to exact pivoting when the
// check fails. It exists because exact pivoting through the highly
// degenerate set-partitioning masters is slow, while the final optimal
// basis is usually small-integer and cheap to confirm.
//
// Same standard form as RevisedSimplex: min c.x, A x = b, x >= 0, starting
// from a unit basis. B^{-1} is kept dense and refactored from scratch every
// few hundred pivots to bound round-off drift. The right-hand side is
// perturbed by tiny distinct amounts so no basic value ties at zero, which
// keeps Dantzig pricing from cycling on these very degenerate masters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kwbound/error.hpp"
#include "kwbound/simplex.hpp"

namespace kwb {

class FloatTableau {
 public:
  enum class Status { Optimal, Unbounded, IterationLimit };

  FloatTableau(int rows, const std::vector<mpq_class>& rhs) : m_(rows) {
    for (const auto& v : rhs) rhs_.push_back(v.get_d());
    perturb(1e-7, 0);
  }

  // New distinct right-hand-side shifts of the given size, then a refactor.
  // Used to climb out of a degenerate stall.
  void reperturb(double scale, std::uint32_t seed) {
    perturb(scale, seed);
    refactor();
  }

  int add_column(const SparseColumn& entries, double cost) {
    std::vector<std::pair<int, double>> col;
    for (const auto& [i, v] : entries) col.push_back({i, v.get_d()});
    cols_.push_back(std::move(col));
    cost_.push_back(cost);
    basic_row_.push_back(-1);
    return static_cast<int>(cols_.size()) - 1;
  }

  void set_unit_basis(const std::vector<int>& basis) {
    require(static_cast<int>(basis.size()) == m_, "FloatTableau: basis size mismatch");
    head_ = basis;
    std::fill(basic_row_.begin(), basic_row_.end(), -1);
    for (int i = 0; i < m_; ++i) basic_row_[at(basis[at(i)])] = i;
    refactor();
  }

  Status optimize(std::uint64_t max_pivots) {
    std::uint64_t pivots = 0;
    int degenerate = 0;
    std::vector<double> d(at(m_));
    for (;;) {
      const bool bland = degenerate >= 50;
      int enter = -1;
      double most = -kEps;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (basic_row_[j] >= 0) continue;
        const double rc = reduced_cost(j);
        if (rc >= -kEps) continue;
        if (bland) { enter = static_cast<int>(j); break; }
        if (rc < most) { most = rc; enter = static_cast<int>(j); }
      }
      if (enter < 0) return Status::Optimal;
      if (pivots++ >= max_pivots) return Status::IterationLimit;
      std::fill(d.begin(), d.end(), 0.0);
      for (const auto& [k, v] : cols_[at(enter)])
        for (int i = 0; i < m_; ++i) d[at(i)] += binv_[at(i) * at(m_) + at(k)] * v;
      // Harris two-pass ratio test: find the loosest step within a small
      // feasibility tolerance, then take the largest pivot element under it.
      double bound = HUGE_VAL;
      for (int i = 0; i < m_; ++i)
        if (d[at(i)] > kPivotTol) bound = std::min(bound, (std::max(xb_[at(i)], 0.0) + kFeasTol) / d[at(i)]);
      int leave = -1;
      double best = 0;
      for (int i = 0; i < m_; ++i) {
        const double di = d[at(i)];
        if (di <= kPivotTol) continue;
        const double ratio = std::max(xb_[at(i)], 0.0) / di;
        if (ratio > bound) continue;
        const bool better = leave < 0 || (bland ? head_[at(i)] < head_[at(leave)] : di > d[at(leave)]);
        if (better) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      degenerate = best <= kEps ? degenerate + 1 : 0;
      pivot(enter, leave, d);
      if (++since_refactor_ >= kRefactorEvery) refactor();
      ++total_pivots_;
    }
  }

  const std::vector<int>& basis() const { return head_; }
  const std::vector<double>& duals() const { return y_; }
  std::uint64_t pivots() const { return total_pivots_; }

 private:
  static constexpr double kEps = 1e-9;
  static constexpr double kPivotTol = 1e-7;
  static constexpr double kFeasTol = 1e-9;
  static constexpr int kRefactorEvery = 256;

  static std::size_t at(int i) { return static_cast<std::size_t>(i); }

  void perturb(double scale, std::uint32_t seed) {
    b_.clear();
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      const auto h = static_cast<std::uint32_t>((i + 1) * 2654435761u ^ seed * 40503u);
      b_.push_back(rhs_[i] + scale * (1.0 + static_cast<double>(h % 1024) / 1024.0));
    }
  }

  double reduced_cost(std::size_t j) const {
    double rc = cost_[j];
    for (const auto& [i, v] : cols_[j]) rc -= y_[at(i)] * v;
    return rc;
  }

  void pivot(int enter, int leave, const std::vector<double>& d) {
    const std::size_t p = at(leave), n = at(m_);
    const double dp = d[p];
    const double rc = reduced_cost(at(enter));
    double* prow = &binv_[p * n];
    const double ystep = rc / dp;
    for (std::size_t k = 0; k < n; ++k) y_[k] += ystep * prow[k];
    for (std::size_t k = 0; k < n; ++k) prow[k] /= dp;
    const double theta = std::max(xb_[p], 0.0) / dp;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || d[i] == 0.0) continue;
      double* row = &binv_[i * n];
      const double f = d[i];
      for (std::size_t k = 0; k < n; ++k) row[k] -= f * prow[k];
      xb_[i] -= theta * f;
    }
    xb_[p] = theta;
    basic_row_[at(head_[p])] = -1;
    head_[p] = enter;
    basic_row_[at(enter)] = leave;
  }

  // Dense Gauss-Jordan with partial pivoting on [B | I], then x_B = B^{-1} b
  // and y = c_B B^{-1} from scratch.
  void refactor() {
    const std::size_t n = at(m_);
    std::vector<double> a(n * n, 0.0);
    for (std::size_t t = 0; t < n; ++t)
      for (const auto& [i, v] : cols_[at(head_[t])]) a[at(i) * n + t] = v;
    binv_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) binv_[i * n + i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
      require(std::abs(a[piv * n + c]) > 1e-12, "FloatTableau: singular basis");
      if (piv != c)
        for (std::size_t k = 0; k < n; ++k) {
          std::swap(a[piv * n + k], a[c * n + k]);
          std::swap(binv_[piv * n + k], binv_[c * n + k]);
        }
      const double inv = 1.0 / a[c * n + c];
      // columns left of c are already reduced to zero in the pivot row
      for (std::size_t k = c; k < n; ++k) a[c * n + k] *= inv;
      for (std::size_t k = 0; k < n; ++k) binv_[c * n + k] *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        const double f = a[r * n + c];
        if (f == 0.0) continue;
        for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        for (std::size_t k = 0; k < n; ++k) binv_[r * n + k] -= f * binv_[c * n + k];
      }
    }
    // row t of the reduced right block is row t of B^{-1} (basis position t)
    xb_.assign(n, 0.0);
    y_.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double* row = &binv_[t * n];
      const double c = cost_[at(head_[t])];
      for (std::size_t k = 0; k < n; ++k) {
        xb_[t] += row[k] * b_[k];
        if (c != 0.0) y_[k] += c * row[k];
      }
    }
    since_refactor_ = 0;
  }

  int m_;
  std::vector<double> rhs_, b_, xb_, y_, binv_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> cost_;
  std::vector<int> basic_row_, head_;
  int since_refactor_ = 0;
  std::uint64_t total_pivots_ = 0;
};

}  // namespace kwb
