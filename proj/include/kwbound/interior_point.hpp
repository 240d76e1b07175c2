#pragma once

// Mehrotra predictor-corrector interior point method in double precision for
//   min c.x  s.t.  A x = b,  x >= 0,
// via dense normal equations (A D A^T) and a Cholesky factorization.
//
// Like FloatTableau it only advises: the column-generation loop uses its
// well-centred duals to price new rectangles, and anything it reports as a
// bound is recomputed exactly (the duals are rounded to rationals and scaled
// by the exact oracle maximum). Its advantage over the simplex guide is
// that degeneracy costs it nothing.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace kwb {

struct InteriorPointResult {
  bool converged = false;
  std::vector<double> x, y;
  double primal = 0, dual = 0;
  int iterations = 0;
};

inline InteriorPointResult interior_point(int rows, const std::vector<double>& b,
                                          const std::vector<std::vector<std::pair<int, double>>>& cols,
                                          const std::vector<double>& c, int max_iter = 200, double tol = 1e-9) {
  const std::size_t n = cols.size();
  const auto at = [](int i) { return static_cast<std::size_t>(i); };
  auto mul_a = [&](const std::vector<double>& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(rows);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [i, a] : cols[j]) out[i] += a * v[j];
    return out;
  };
  auto mul_at = [&](const Eigen::VectorXd& y, std::size_t j) {
    double s = 0;
    for (const auto& [i, a] : cols[j]) s += a * y[i];
    return s;
  };
  Eigen::VectorXd bv(rows);
  for (int i = 0; i < rows; ++i) bv[i] = b[at(i)];

  std::vector<double> x(n, 1.0), s(n, 1.0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
  InteriorPointResult res;
  const double bnorm = 1 + bv.norm();
  double cnorm = 1;
  for (double v : c) cnorm += v * v;
  cnorm = std::sqrt(cnorm);

  std::vector<double> d(n), rd(n), dx(n), ds(n), rc(n);
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    const Eigen::VectorXd rp = bv - mul_a(x);
    double mu = 0, pobj = 0;
    for (std::size_t j = 0; j < n; ++j) {
      rd[j] = c[j] - mul_at(y, j) - s[j];
      mu += x[j] * s[j];
      pobj += c[j] * x[j];
    }
    mu /= static_cast<double>(n);
    const double dobj = bv.dot(y);
    double rdn = 0;
    for (double v : rd) rdn += v * v;
    if (rp.norm() / bnorm < tol && std::sqrt(rdn) / cnorm < tol && std::abs(pobj - dobj) / (1 + std::abs(pobj)) < tol) {
      res.converged = true;
      break;
    }
    for (std::size_t j = 0; j < n; ++j) d[j] = x[j] / s[j];
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, rows);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [i, a] : cols[j])
        for (const auto& [k, e] : cols[j])
          if (k <= i) M(i, k) += d[j] * a * e;
    // tiny regularization keeps the factorization alive near degenerate optima
    for (int i = 0; i < rows; ++i) M(i, i) += 1e-12;
    const Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower> ldlt(M);

    // solve for (dx, dy, ds) with complementarity right-hand side rc
    auto direction = [&](const std::vector<double>& r, Eigen::VectorXd& dy) {
      std::vector<double> t(n);
      for (std::size_t j = 0; j < n; ++j) t[j] = r[j] / s[j] - d[j] * rd[j];
      dy = ldlt.solve(rp - mul_a(t));
      for (std::size_t j = 0; j < n; ++j) {
        ds[j] = rd[j] - mul_at(dy, j);
        dx[j] = (r[j] - x[j] * ds[j]) / s[j];
      }
    };
    auto step = [&](const std::vector<double>& v, const std::vector<double>& dv) {
      double a = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (dv[j] < 0) a = std::min(a, -v[j] / dv[j]);
      return a;
    };

    Eigen::VectorXd dy;
    for (std::size_t j = 0; j < n; ++j) rc[j] = -x[j] * s[j];
    direction(rc, dy);
    const double ap = step(x, dx), ad = step(s, ds);
    double mu_aff = 0;
    for (std::size_t j = 0; j < n; ++j) mu_aff += (x[j] + ap * dx[j]) * (s[j] + ad * ds[j]);
    mu_aff /= static_cast<double>(n);
    const double sigma = std::pow(mu_aff / mu, 3);
    for (std::size_t j = 0; j < n; ++j) rc[j] = sigma * mu - x[j] * s[j] - dx[j] * ds[j];
    direction(rc, dy);
    const double ap2 = std::min(1.0, 0.995 * step(x, dx)), ad2 = std::min(1.0, 0.995 * step(s, ds));
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += ap2 * dx[j];
      s[j] += ad2 * ds[j];
    }
    y += ad2 * dy;
  }
  res.x = x;
  res.y.assign(y.data(), y.data() + rows);
  for (std::size_t j = 0; j < n; ++j) res.primal += c[j] * x[j];
  res.dual = bv.dot(y);
  return res;
}

}  // namespace kwb
