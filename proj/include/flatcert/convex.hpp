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

// Convex feasibility helpers: common points of polytope hulls.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/lp.hpp"

namespace flatcert {

struct CommonPointResult {
  bool nonempty = false;
  double residual = 0.0;  // smallest s with a point within s (max-norm) of every hull
  Vec point;
};

/// Smallest max-norm slack s such that some x lies within s of every hull.
inline CommonPointResult common_point(const std::vector<Piece>& hulls, double tol = kGeoTol) {
  CommonPointResult out;
  if (hulls.empty()) return out;
  const int n = static_cast<int>(hulls.front().rows());
  const int q = static_cast<int>(hulls.size());
  int lambdas = 0;
  for (const auto& h : hulls) lambdas += static_cast<int>(h.cols());
  if (q == 1) {
    out.nonempty = true;
    out.point = hulls.front().col(0);
    return out;
  }
  // columns: lambda | x+ | x- | s | slacks (2 n q)
  const int cx = lambdas;
  const int cs = cx + 2 * n;
  const int cslack = cs + 1;
  const int cols = cslack + 2 * n * q;
  const int rows = 2 * n * q + q;
  Mat m = Mat::Zero(rows, cols);
  Vec d = Vec::Zero(rows);
  int row = 0;
  int lam = 0;
  int slack = cslack;
  for (int j = 0; j < q; ++j) {
    const Piece& h = hulls[j];
    for (int r = 0; r < n; ++r) {
      for (int sign = -1; sign <= 1; sign += 2) {
        // sign * (x - V lambda) - s + slack = 0
        m(row, cx + r) = sign;
        m(row, cx + n + r) = -sign;
        for (Eigen::Index c = 0; c < h.cols(); ++c) m(row, lam + c) = -sign * h(r, c);
        m(row, cs) = -1.0;
        m(row, slack++) = 1.0;
        ++row;
      }
    }
    for (Eigen::Index c = 0; c < h.cols(); ++c) m(row, lam + c) = 1.0;
    d(row++) = 1.0;
    lam += static_cast<int>(h.cols());
  }
  Vec cost = Vec::Zero(cols);
  cost(cs) = -1.0;
  const auto res = lp::solve_standard(m, d, cost);
  if (res.status != lp::Status::kOptimal) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.point = res.y.segment(cx, n) - res.y.segment(cx + n, n);
  out.residual = res.y(cs);
  // Recompute the residual from the point itself.
  double worst = 0.0;
  for (const auto& h : hulls) worst = std::max(worst, min_norm_point(h.colwise() - out.point).distance);
  out.residual = std::min(out.residual, worst);
  out.nonempty = out.residual <= tol;
  return out;
}

inline CommonPointResult common_point(const std::vector<CompactSet>& convex_sets, double tol = kGeoTol) {
  std::vector<Piece> hulls;
  for (const auto& s : convex_sets) hulls.push_back(s.vertices());
  return common_point(hulls, tol);
}

}  // namespace flatcert
