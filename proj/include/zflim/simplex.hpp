#pragma once

// Dense primal simplex for  max c'x  s.t.  A x <= b, x >= 0, with b >= 0 so
// the slack basis is feasible. Works on the condensed (Tucker) tableau, so
// storage is (m+1) x (n+1) regardless of the number of slacks. Dantzig
// pricing, switching to Bland's rule while the method stalls on degenerate
// pivots.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "zflim/error.hpp"

namespace zflim::lp {

enum class Status { optimal, unbounded, iteration_limit };

struct Solution {
  Status status = Status::iteration_limit;
  Eigen::VectorXd x;  ///< primal values
  Eigen::VectorXd y;  ///< multipliers of the rows of A (nonnegative at optimum)
  double objective = 0.0;
  int iterations = 0;
};

struct Options {
  double pricing_tol = 1e-11;
  double pivot_tol = 1e-11;
  int degenerate_switch = 50;
  int max_iterations = 0;  ///< 0: 100 (m + n) + 1000
};

inline Solution maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                         const Options& opt = {}) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) throw Error(ErrorCode::InvalidArgument, "LP dimension mismatch");
  if ((b.array() < 0.0).any()) throw Error(ErrorCode::InvalidArgument, "LP right-hand side must be nonnegative");

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor t(m + 1, n + 1);
  t.topLeftCorner(m, n) = a;
  t.topRightCorner(m, 1) = b;
  t.bottomLeftCorner(1, n) = -c.transpose();
  t(m, n) = 0.0;

  // Variable labels: 0..n-1 structural, n..n+m-1 slacks.
  std::vector<Eigen::Index> basic(m), nonbasic(n);
  for (Eigen::Index i = 0; i < m; ++i) basic[i] = n + i;
  for (Eigen::Index j = 0; j < n; ++j) nonbasic[j] = j;

  const int max_iter = opt.max_iterations > 0 ? opt.max_iterations : static_cast<int>(100 * (m + n) + 1000);
  Solution sol;
  int degenerate_run = 0;
  Eigen::VectorXd col(m + 1);
  Eigen::RowVectorXd row(n + 1);

  for (int iter = 0;; ++iter) {
    if (iter >= max_iter) {
      sol.status = Status::iteration_limit;
      sol.iterations = iter;
      return sol;
    }
    const bool bland = degenerate_run >= opt.degenerate_switch;

    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = t(m, j);
      if (d >= -opt.pricing_tol) continue;
      if (enter < 0 || (bland ? nonbasic[j] < nonbasic[enter] : d < t(m, enter))) enter = j;
    }
    if (enter < 0) {
      sol.status = Status::optimal;
      sol.iterations = iter;
      break;
    }

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double p = t(i, enter);
      if (p <= opt.pivot_tol) continue;
      const double ratio = std::max(t(i, n), 0.0) / p;
      bool take = ratio < best_ratio;
      if (!take && ratio == best_ratio && leave >= 0) {
        take = bland ? basic[i] < basic[leave] : p > t(leave, enter);
      }
      if (take) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      sol.status = Status::unbounded;
      sol.iterations = iter;
      return sol;
    }
    degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;

    const double p = t(leave, enter);
    col = t.col(enter);
    row = t.row(leave) / p;
    t.noalias() -= col * row;
    t.row(leave) = row;
    t.col(enter) = -col / p;
    t(leave, enter) = 1.0 / p;
    std::swap(basic[leave], nonbasic[enter]);
  }

  sol.x = Eigen::VectorXd::Zero(n);
  sol.y = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basic[i] < n) sol.x[basic[i]] = std::max(t(i, n), 0.0);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (nonbasic[j] >= n) sol.y[nonbasic[j] - n] = std::max(t(m, j), 0.0);
  }
  sol.objective = t(m, n);
  return sol;
}

}  // namespace zflim::lp
