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

// Support configurations of projected point sets: a subspace L and a
// direction u in L such that the two support hyperplanes of P(L) orthogonal
// to u together touch at least n+1 of the projected points.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/search.hpp"

namespace flatcert {

struct SectionsConfiguration {
  Mat subspace;            // n x k orthonormal basis of L
  Vec u;                   // unit, in L
  std::vector<int> upper;  // indices touching {x . u = max}
  std::vector<int> lower;  // indices touching {x . u = min}
  double top = 0.0;
  double bottom = 0.0;
  double residual = 0.0;   // largest distance of a touching point from its plane

  std::vector<int> touching() const {
    std::vector<int> t = upper;
    t.insert(t.end(), lower.begin(), lower.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }
};

namespace detail {

// Gap of each point to the nearer of the two support planes along u.
inline std::vector<double> plane_gaps(const Mat& pts, const Vec& u) {
  const Eigen::RowVectorXd v = u.transpose() * pts;
  const double mx = v.maxCoeff();
  const double mn = v.minCoeff();
  std::vector<double> g(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) g[j] = std::min(mx - v(j), v(j) - mn);
  return g;
}

inline double kth_smallest(std::vector<double> v, int k) {
  std::nth_element(v.begin(), v.begin() + k, v.end());
  return v[k];
}

// Basis of L: u followed by an orthonormal completion.
inline Mat subspace_through(const Vec& u, int k) {
  const auto n = u.size();
  if (k == n) return Mat::Identity(n, n);
  Mat f(n, k);
  f.col(0) = u;
  if (k > 1) f.rightCols(k - 1) = complement_basis(u).leftCols(k - 1);
  return f;
}

inline bool has_interior(const Mat& pts, const Mat& basis, double tol) {
  const Mat c = basis.transpose() * pts;
  const Mat centered = c.colwise() - c.rowwise().mean();
  Eigen::JacobiSVD<Mat> svd(centered);
  const auto& s = svd.singularValues();
  return s.size() >= basis.cols() && s(basis.cols() - 1) > tol;
}

}  // namespace detail

/// Build the configuration for direction u, touching points within tol.
inline SectionsConfiguration sections_at(const Mat& pts, const Vec& u, int k, double tol) {
  SectionsConfiguration c;
  c.u = u;
  c.subspace = detail::subspace_through(u, k);
  const Eigen::RowVectorXd v = u.transpose() * pts;
  c.top = v.maxCoeff();
  c.bottom = v.minCoeff();
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (c.top - v(j) <= tol) {
      c.upper.push_back(static_cast<int>(j));
      c.residual = std::max(c.residual, c.top - v(j));
    } else if (v(j) - c.bottom <= tol) {
      c.lower.push_back(static_cast<int>(j));
      c.residual = std::max(c.residual, v(j) - c.bottom);
    }
  }
  return c;
}

/// Searches directions u; L is taken as u plus a fixed completion. Sections
/// are the orthogonal projections onto L, so s_j(L) . u = p_j . u.
inline Outcome<SectionsConfiguration> polytope_sections_config(const Mat& pts, int k, const DirectionGrid& grid,
                                                               double tol = kSolveTol) {
  using Out = Outcome<SectionsConfiguration>;
  const int n = static_cast<int>(pts.rows());
  if (pts.cols() < n + 1) return Out::precondition("need at least n+1 points");
  if (k < 1 || k > n) return Out::precondition("need 1 <= k <= n");
  if (grid.n != n || grid.k != 1) return Out::precondition("grid must sample directions of R^n");
  const int need = n + 1;
  const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  for (int i : grid.representatives()) {
    const Mat basis = detail::subspace_through(grid.pole(i), k);
    if (!detail::has_interior(pts, basis, kGeoTol * scale)) {
      std::ostringstream msg;
      msg << "projection to the subspace through (" << grid.pole(i).transpose() << ") has empty interior";
      return Out::precondition(msg.str());
    }
  }
  auto score = [&](const Vec& u) { return -detail::kth_smallest(detail::plane_gaps(pts, u), need - 1); };
  DirectionOptimum best = sweep_max(grid, score, true);
  best = refine_max(best.v, best.value, score, grid.resolution, 500);

  // Solve the tie equations exactly for the touching candidates.
  const auto gaps = detail::plane_gaps(pts, best.v);
  std::vector<int> order(gaps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gaps[a] < gaps[b]; });
  const Eigen::RowVectorXd v = best.v.transpose() * pts;
  const double mid = 0.5 * (v.maxCoeff() + v.minCoeff());
  std::vector<int> up;
  std::vector<int> down;
  for (int j = 0; j < need; ++j) (v(order[j]) >= mid ? up : down).push_back(order[j]);
  Vec u = best.v;
  if (!up.empty() && !down.empty()) {
    Mat rows(need - 2, n);
    int r = 0;
    for (size_t a = 1; a < up.size(); ++a) rows.row(r++) = (pts.col(up[a]) - pts.col(up[0])).transpose();
    for (size_t a = 1; a < down.size(); ++a) rows.row(r++) = (pts.col(down[a]) - pts.col(down[0])).transpose();
    if (r > 0) {
      Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
      Vec cand = svd.matrixV().col(n - 1);
      if (cand.dot(best.v) < 0) cand = -cand;
      if (detail::kth_smallest(detail::plane_gaps(pts, cand), need - 1) <
          detail::kth_smallest(detail::plane_gaps(pts, u), need - 1)) {
        u = cand.normalized();
      }
    }
  }
  SectionsConfiguration c = sections_at(pts, u, k, tol);
  const bool disjoint = c.top - c.bottom > tol;
  if (static_cast<int>(c.touching().size()) >= need && disjoint &&
      detail::has_interior(pts, c.subspace, kGeoTol * scale)) {
    return Out::ok(c, c.residual);
  }
  return Out::resolution("no direction with n+1 touching points found", -best.value);
}

}  // namespace flatcert
