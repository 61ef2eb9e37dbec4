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

// Decidable forms of the hypotheses used by the solvers: antipodal pairs,
// non-antipodal families, linear separation, equalized segment families and
// l-convexity.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/lp.hpp"
#include "flatcert/min_norm_point.hpp"

namespace flatcert {

struct AntipodalPairWitness {
  Vec x;
  Vec y;
  Vec u;  // unit; outer normal at x, -u is the outer normal at y
  double slack = 0.0;
};

struct AntipodalResult {
  bool antipodal = false;
  std::optional<AntipodalPairWitness> witness;
  bool precondition_ok = true;
  std::string precondition_note;
};

namespace detail {

// Radius of the vertex cloud around its centroid; tolerances scale with it.
inline double cloud_scale(const Mat& pts) {
  const Vec c = pts.rowwise().mean();
  const double r = (pts.colwise() - c).colwise().norm().maxCoeff();
  return r > 0.0 ? r : 1.0;
}

// Finds u != 0 with rows(i) . u <= tol for every row, or reports none.
// The box |u|_inf <= 1 normalizes; u is accepted when some |u_k| reaches 1.
inline std::optional<Vec> nonzero_cone_point(const Mat& rows, double tol) {
  const auto n = rows.cols();
  Mat a(rows.rows() + 2 * n, n);
  Vec b(rows.rows() + 2 * n);
  a.topRows(rows.rows()) = rows;
  b.head(rows.rows()).setConstant(tol);
  a.middleRows(rows.rows(), n) = Mat::Identity(n, n);
  a.bottomRows(n) = -Mat::Identity(n, n);
  b.tail(2 * n).setConstant(1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      const Vec c = sign * Vec::Unit(n, k);
      const auto res = lp::solve_inequality(a, b, c);
      if (res.status == lp::Status::kOptimal && res.value >= 1.0 - 1e-9) return res.x;
    }
  }
  return std::nullopt;
}

inline Mat normal_cone_rows(const Mat& verts, const Vec& x) {
  return (verts.colwise() - x).transpose();
}

inline Mat antipodal_rows(const Mat& verts, const Vec& x, const Vec& y) {
  Mat rows(2 * verts.cols(), verts.rows());
  rows.topRows(verts.cols()) = (verts.colwise() - x).transpose();
  rows.bottomRows(verts.cols()) = (-(verts.colwise() - y)).transpose();
  return rows;
}

// Extreme points of conv(verts) after merging duplicates.
inline Mat extreme_points(const Mat& verts, double tol) {
  std::vector<Eigen::Index> unique;
  for (Eigen::Index j = 0; j < verts.cols(); ++j) {
    bool dup = false;
    for (auto i : unique) dup = dup || (verts.col(i) - verts.col(j)).norm() <= tol;
    if (!dup) unique.push_back(j);
  }
  std::vector<Eigen::Index> keep;
  for (size_t a = 0; a < unique.size(); ++a) {
    if (unique.size() <= 2) {
      keep.push_back(unique[a]);
      continue;
    }
    Mat others(verts.rows(), static_cast<Eigen::Index>(unique.size() - 1));
    Eigen::Index c = 0;
    for (size_t b = 0; b < unique.size(); ++b) {
      if (b != a) others.col(c++) = verts.col(unique[b]) - verts.col(unique[a]);
    }
    if (min_norm_point(others).distance > tol) keep.push_back(unique[a]);
  }
  Mat out(verts.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = verts.col(keep[j]);
  return out;
}

}  // namespace detail

/// Decides whether x and y are antipodal with respect to conv(K): some unit u
/// is an outer normal at x while -u is an outer normal at y. `tol` is relative
/// to the radius of K's vertex cloud, so the verdict is invariant under
/// translation and uniform scaling.
inline AntipodalResult is_antipodal_pair(const Vec& x, const Vec& y, const CompactSet& k,
                                         double tol = kGeoTol) {
  if (x.size() != k.dimension() || y.size() != k.dimension()) {
    throw std::invalid_argument("is_antipodal_pair: dimension mismatch");
  }
  const Mat verts = k.vertices();
  const double t = tol * detail::cloud_scale(verts);
  AntipodalResult out;
  for (const Vec* p : {&x, &y}) {
    const double dist = min_norm_point(verts.colwise() - *p).distance;
    if (dist > t) {
      out.precondition_ok = false;
      out.precondition_note = "point lies outside the hull";
    } else if (!detail::nonzero_cone_point(detail::normal_cone_rows(verts, *p), t)) {
      out.precondition_ok = false;
      out.precondition_note = "point lies in the interior of the hull";
    }
  }
  auto u = detail::nonzero_cone_point(detail::antipodal_rows(verts, x, y), t);
  if (!u) return out;
  AntipodalPairWitness w{x, y, u->normalized(), 0.0};
  w.slack = std::max(0.0, (detail::antipodal_rows(verts, x, y) * w.u).maxCoeff());
  out.antipodal = true;
  out.witness = w;
  return out;
}

struct FamilyAntipodality {
  bool non_antipodal = true;
  int member = -1;
  std::optional<AntipodalPairWitness> witness;
};

/// True iff no member contains a pair of points antipodal with respect to the
/// hull of the union. Members are examined through their vertices.
inline FamilyAntipodality is_non_antipodal_family(const std::vector<CompactSet>& family,
                                                  double tol = kGeoTol) {
  if (family.size() < 2) throw std::invalid_argument("is_non_antipodal_family: need at least two sets");
  const int n = family.front().dimension();
  for (const auto& s : family) {
    if (s.dimension() != n) throw std::invalid_argument("is_non_antipodal_family: dimension mismatch");
  }
  const Mat all = union_of(family).vertices();
  const double t = tol * detail::cloud_scale(all);
  const Mat hull = detail::extreme_points(all, t);
  FamilyAntipodality out;
  for (int m = 0; m < static_cast<int>(family.size()); ++m) {
    const Mat verts = family[m].vertices();
    std::vector<Vec> boundary;
    for (Eigen::Index j = 0; j < verts.cols(); ++j) {
      const Vec v = verts.col(j);
      bool dup = false;
      for (const auto& b : boundary) dup = dup || (b - v).norm() <= t;
      if (dup) continue;
      if (detail::nonzero_cone_point(detail::normal_cone_rows(hull, v), t)) boundary.push_back(v);
    }
    for (size_t a = 0; a < boundary.size(); ++a) {
      for (size_t b = a; b < boundary.size(); ++b) {
        const Mat rows = detail::antipodal_rows(hull, boundary[a], boundary[b]);
        if (auto u = detail::nonzero_cone_point(rows, t)) {
          AntipodalPairWitness w{boundary[a], boundary[b], u->normalized(), 0.0};
          w.slack = std::max(0.0, (rows * w.u).maxCoeff());
          out.non_antipodal = false;
          out.member = m;
          out.witness = w;
          return out;
        }
      }
    }
  }
  return out;
}

/// Smallest clearance h_K(u) - h_V(u) + h_K(-u) - h_V(-u) over members V and
/// the given unit directions. Zero means some member touches both support
/// planes of the union hull in a sampled direction.
inline double antipodal_clearance(const std::vector<CompactSet>& family, const std::vector<Vec>& directions) {
  const CompactSet k = union_of(family);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& u : directions) {
    const double hk = support(k, u) + support(k, -u);
    for (const auto& v : family) best = std::min(best, hk - support(v, u) - support(v, -u));
  }
  return best;
}

struct SeparationWitness {
  Vec functional;  // unit; l(x) = functional . x
  double threshold = 0.0;
  double margin = 0.0;
};

/// Strict linear separation of the union of F1 (negative side) from the union
/// of F2 (positive side). The witness is the Euclidean max-margin separator,
/// computed from the min-norm point of the Minkowski difference of the hulls.
inline std::optional<SeparationWitness> are_separated(const std::vector<CompactSet>& f1,
                                                      const std::vector<CompactSet>& f2,
                                                      double tol = kGeoTol) {
  if (f1.empty() || f2.empty()) throw std::invalid_argument("are_separated: empty family");
  const Mat a = union_of(f1).vertices();
  const Mat b = union_of(f2).vertices();
  Mat diff(a.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    diff.middleCols(j * a.cols(), a.cols()) = (-a).colwise() + b.col(j);
  }
  const MinNormResult mn = min_norm_point(diff);
  const double scale = std::max(detail::cloud_scale(a), detail::cloud_scale(b));
  if (mn.distance <= tol * scale) return std::nullopt;
  SeparationWitness w;
  w.functional = mn.point / mn.distance;
  const double hi_a = (w.functional.transpose() * a).maxCoeff();
  const double lo_b = (w.functional.transpose() * b).minCoeff();
  if (!(lo_b > hi_a)) return std::nullopt;
  w.threshold = 0.5 * (hi_a + lo_b);
  w.margin = 0.5 * (lo_b - hi_a);
  return w;
}

/// Which alternative of the equalized-segments definition holds; 0 if none.
inline int are_equalized(std::span<const Segment> a, std::span<const Segment> b, double tol = kGeoTol) {
  if (a.empty() || b.empty()) throw std::invalid_argument("are_equalized: empty list");
  auto all_equal = [tol](std::span<const Segment> s, bool hi) {
    const double ref = hi ? s.front().hi : s.front().lo;
    return std::all_of(s.begin(), s.end(), [&](const Segment& x) { return std::abs((hi ? x.hi : x.lo) - ref) <= tol; });
  };
  auto all_contain = [&](double lo, double hi) {
    const Segment core{lo, hi};
    return std::all_of(a.begin(), a.end(), [&](const Segment& x) { return x.contains(core, tol); }) &&
           std::all_of(b.begin(), b.end(), [&](const Segment& x) { return x.contains(core, tol); });
  };
  // Alternative 1: right ends of A meet at p, left ends of B meet at q.
  if (all_equal(a, true) && all_equal(b, false)) {
    const double p = a.front().hi;
    const double q = b.front().lo;
    if (p <= q + tol || all_contain(q, p)) return 1;
  }
  // Alternative 2: right ends of B meet at q, left ends of A meet at p.
  if (all_equal(b, true) && all_equal(a, false)) {
    const double q = b.front().hi;
    const double p = a.front().lo;
    if (q <= p + tol || all_contain(p, q)) return 2;
  }
  return 0;
}

struct ConvexityReport {
  bool convex = true;
  Mat subspace;  // offending subspace basis when not convex
  Vec uncovered;  // point of the projected hull missed by the projection (subspace coordinates)
};

/// Sampled l-convexity: for each l-dimensional subspace basis, the projection
/// of the set must cover samples of its own hull. For l = 1 the check is exact
/// per subspace. "false" is certain; "true" is limited by the sampling.
inline ConvexityReport is_l_convex(const CompactSet& set, int l, const std::vector<Mat>& subspaces,
                                   double tol = kGeoTol, int samples = 96, std::uint64_t seed = 0) {
  const int n = set.dimension();
  if (l < 1 || l > n) throw std::invalid_argument("is_l_convex: need 1 <= l <= n");
  const double t = tol * detail::cloud_scale(set.vertices());
  ConvexityReport out;
  std::mt19937_64 rng(seed);
  for (const Mat& basis : subspaces) {
    if (basis.rows() != n || basis.cols() != l) throw std::invalid_argument("is_l_convex: subspace shape mismatch");
    if (l == 1) {
      auto parts = piece_intervals(set, basis.col(0));
      std::sort(parts.begin(), parts.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
      double reach = parts.front().hi;
      for (size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].lo > reach + t) {
          out.convex = false;
          out.subspace = basis;
          out.uncovered = vec({0.5 * (reach + parts[i].lo)});
          return out;
        }
        reach = std::max(reach, parts[i].hi);
      }
      continue;
    }
    std::vector<Piece> proj;
    for (const auto& p : set.pieces()) proj.push_back(basis.transpose() * p);
    if (proj.size() == 1) continue;
    const Mat verts = basis.transpose() * set.vertices();
    std::vector<Vec> probes;
    for (size_t i = 0; i < proj.size(); ++i) {
      for (size_t j = i + 1; j < proj.size(); ++j) {
        probes.push_back(0.5 * (proj[i].rowwise().mean() + proj[j].rowwise().mean()));
      }
    }
    std::uniform_int_distribution<Eigen::Index> pick(0, verts.cols() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
      Vec w(3);
      for (int c = 0; c < 3; ++c) w(c) = -std::log(std::max(1e-300, unit(rng)));
      w /= w.sum();
      probes.push_back(w(0) * verts.col(pick(rng)) + w(1) * verts.col(pick(rng)) + w(2) * verts.col(pick(rng)));
    }
    for (const Vec& z : probes) {
      bool covered = false;
      for (const auto& p : proj) {
        if (min_norm_point(p.colwise() - z).distance <= t) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        out.convex = false;
        out.subspace = basis;
        out.uncovered = z;
        return out;
      }
    }
  }
  return out;
}

/// Overload sampling subspaces from a frame grid with k = l.
inline ConvexityReport is_l_convex(const CompactSet& set, int l, const DirectionGrid& grid, double tol = kGeoTol) {
  if (grid.k != l || grid.n != set.dimension()) throw std::invalid_argument("is_l_convex: grid does not match (n, l)");
  std::vector<Mat> bases;
  for (int i : grid.representatives()) bases.push_back(grid.nodes[i]);
  return is_l_convex(set, l, bases, tol);
}

}  // namespace flatcert
