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

// Minimum-norm point of a polytope given by its vertices (Wolfe's method).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

namespace flatcert {

struct MinNormResult {
  Eigen::VectorXd point;     // nearest point of conv(columns) to the origin
  Eigen::VectorXd weights;   // barycentric weights, one per column
  double distance = 0.0;
};

namespace detail {

// Affine minimizer of |P a| subject to sum(a) = 1 over the selected columns.
inline Eigen::VectorXd affine_min_norm(const Eigen::MatrixXd& points,
                                       const std::vector<int>& active) {
  const int s = static_cast<int>(active.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      kkt(i, j) = points.col(active[i]).dot(points.col(active[j]));
    }
    kkt(i, s) = 1.0;
    kkt(s, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  rhs(s) = 1.0;
  Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(s);
}

}  // namespace detail

/// Nearest point of conv(columns of `points`) to the origin.
///
/// Terminates finitely in exact arithmetic; the iteration cap only guards
/// against cycling caused by rounding on degenerate inputs.
inline MinNormResult min_norm_point(const Eigen::MatrixXd& points) {
  const int m = static_cast<int>(points.cols());
  MinNormResult out;
  out.weights = Eigen::VectorXd::Zero(m);
  if (m == 0) return out;

  double scale = 0.0;
  for (int j = 0; j < m; ++j) scale = std::max(scale, points.col(j).squaredNorm());
  int start = 0;
  for (int j = 1; j < m; ++j) {
    if (points.col(j).squaredNorm() < points.col(start).squaredNorm()) start = j;
  }
  std::vector<int> active{start};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = points.col(start);

  const int max_major = 20 * (m + static_cast<int>(points.rows())) + 50;
  for (int major = 0; major < max_major; ++major) {
    Eigen::VectorXd dots = points.transpose() * x;
    int j = 0;
    dots.minCoeff(&j);
    if (x.squaredNorm() - dots(j) <= 1e-12 * scale) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < m + 5; ++minor) {
      Eigen::VectorXd alpha = detail::affine_min_norm(points, active);
      bool interior = true;
      for (int i = 0; i < alpha.size(); ++i) {
        if (alpha(i) <= 1e-14) {
          interior = false;
          break;
        }
      }
      if (interior) {
        for (size_t i = 0; i < active.size(); ++i) lambda[i] = alpha(i);
        break;
      }
      double theta = 1.0;
      for (size_t i = 0; i < active.size(); ++i) {
        if (alpha(i) <= 1e-14 && lambda[i] - alpha(i) > 0.0) {
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha(i)));
        }
      }
      std::vector<int> next_active;
      std::vector<double> next_lambda;
      for (size_t i = 0; i < active.size(); ++i) {
        const double l = lambda[i] + theta * (alpha(i) - lambda[i]);
        if (l > 1e-14) {
          next_active.push_back(active[i]);
          next_lambda.push_back(l);
        }
      }
      if (next_active.empty()) {
        next_active.push_back(j);
        next_lambda.push_back(1.0);
      }
      double sum = 0.0;
      for (double l : next_lambda) sum += l;
      for (double& l : next_lambda) l /= sum;
      active = std::move(next_active);
      lambda = std::move(next_lambda);
    }
    Eigen::VectorXd next = Eigen::VectorXd::Zero(points.rows());
    for (size_t i = 0; i < active.size(); ++i) next += lambda[i] * points.col(active[i]);
    x = next;
  }

  for (size_t i = 0; i < active.size(); ++i) out.weights(active[i]) = lambda[i];
  out.point = Eigen::VectorXd::Zero(points.rows());
  for (size_t i = 0; i < active.size(); ++i) out.point += lambda[i] * points.col(active[i]);
  out.distance = out.point.norm();
  return out;
}

}  // namespace flatcert
