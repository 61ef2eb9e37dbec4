// Copyright 2026 The flatcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense two-phase simplex with Bland's rule. Sized for the small feasibility
// programs used by the predicates (tens of rows, hundreds of columns).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace flatcert::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct StandardResult {
  Status status = Status::kInfeasible;
  Eigen::VectorXd y;      // primal solution, y >= 0
  Eigen::VectorXd duals;  // one multiplier per equality row
  double value = 0.0;
};

namespace detail {

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& m, const Eigen::VectorXd& d)
      : rows_(static_cast<int>(m.rows())), cols_(static_cast<int>(m.cols())) {
    t_ = Eigen::MatrixXd::Zero(rows_, cols_ + rows_ + 1);
    flipped_.assign(rows_, false);
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      const double sign = d(i) < 0.0 ? -1.0 : 1.0;
      flipped_[i] = sign < 0.0;
      t_.row(i).head(cols_) = sign * m.row(i);
      t_(i, cols_ + i) = 1.0;
      t_(i, cols_ + rows_) = sign * d(i);
      basis_[i] = cols_ + i;
    }
  }

  // Maximizes cost . y over the current basis. Artificial columns may enter
  // only when `allow_artificial` is set.
  Status optimize(const Eigen::VectorXd& cost, bool allow_artificial) {
    const int total = cols_ + rows_;
    const int cap = 50 * (total + rows_) + 1000;
    for (int iter = 0; iter < cap; ++iter) {
      int enter = -1;
      for (int j = 0; j < total && enter < 0; ++j) {
        if (!allow_artificial && j >= cols_) break;
        if (is_basic(j)) continue;
        double reduced = cost(j);
        for (int i = 0; i < rows_; ++i) reduced -= cost(basis_[i]) * t_(i, j);
        if (reduced > kCostTol) enter = j;
      }
      if (enter < 0) return Status::kOptimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, total) / a;
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::kUnbounded;
      pivot(leave, enter);
    }
    return Status::kOptimal;
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < rows_; ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  // Pivots basic artificial variables out wherever a structural column allows.
  void expel_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (int j = 0; j < cols_; ++j) {
        if (!is_basic(j) && std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  bool is_basic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  double rhs(int i) const { return t_(i, cols_ + rows_); }
  int basis(int i) const { return basis_[i]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double entry(int i, int j) const { return t_(i, j); }
  bool flipped(int i) const { return flipped_[i]; }

 private:
  static constexpr double kCostTol = 1e-11;
  static constexpr double kPivotTol = 1e-11;
  int rows_;
  int cols_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<bool> flipped_;
};

}  // namespace detail

/// Maximizes c . y subject to M y = d, y >= 0.
inline StandardResult solve_standard(const Eigen::MatrixXd& m, const Eigen::VectorXd& d,
                                     const Eigen::VectorXd& c) {
  detail::Tableau tab(m, d);
  const int q = tab.cols();
  const int r = tab.rows();
  StandardResult out;

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(q + r);
  phase1.tail(r).setConstant(-1.0);
  tab.optimize(phase1, true);
  double infeas = 0.0;
  for (int i = 0; i < r; ++i) {
    if (tab.basis(i) >= q) infeas += tab.rhs(i);
  }
  const double scale = 1.0 + d.cwiseAbs().maxCoeff();
  if (infeas > 1e-9 * scale) {
    out.status = lp::Status::kInfeasible;
    return out;
  }
  tab.expel_artificials();

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(q + r);
  phase2.head(q) = c;
  out.status = tab.optimize(phase2, false);
  out.y = Eigen::VectorXd::Zero(q);
  for (int i = 0; i < r; ++i) {
    if (tab.basis(i) < q) out.y(tab.basis(i)) = tab.rhs(i);
  }
  out.value = c.dot(out.y);
  // Multipliers: cost_B^T B^{-1}; B^{-1} sits in the artificial block.
  out.duals = Eigen::VectorXd::Zero(r);
  for (int k = 0; k < r; ++k) {
    double pi = 0.0;
    for (int i = 0; i < r; ++i) pi += phase2(tab.basis(i)) * tab.entry(i, q + k);
    out.duals(k) = tab.flipped(k) ? -pi : pi;
  }
  return out;
}

struct InequalityResult {
  Status status = Status::kInfeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Maximizes c . x subject to A x <= b with x free, by solving the dual
/// min b.y s.t. A^T y = c, y >= 0. Suited to few variables and many rows.
/// A dual infeasibility is reported as kUnbounded (the primal is assumed feasible).
inline InequalityResult solve_inequality(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                         const Eigen::VectorXd& c) {
  const StandardResult dual = solve_standard(a.transpose(), c, -b);
  InequalityResult out;
  if (dual.status == Status::kInfeasible) {
    out.status = Status::kUnbounded;
    return out;
  }
  if (dual.status == Status::kUnbounded) {
    out.status = Status::kInfeasible;
    return out;
  }
  out.status = Status::kOptimal;
  out.x = -dual.duals;
  out.value = c.dot(out.x);
  return out;
}

}  // namespace flatcert::lp
