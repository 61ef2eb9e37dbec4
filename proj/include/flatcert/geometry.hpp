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

// Vectors, compact sets, segments, flats, hyperplanes and norms.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatcert/min_norm_point.hpp"
#include "flatcert/tolerances.hpp"

namespace flatcert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMinDimension = 1;
inline constexpr int kMaxDimension = 8;

inline Vec vec(std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  int i = 0;
  for (double c : coords) v(i++) = c;
  return v;
}

inline bool all_finite(const Eigen::Ref<const Mat>& m) { return m.allFinite(); }

/// Closed segment [lo, hi] on an oriented line. Single points are allowed.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
  bool contains(const Segment& other, double tol = 0.0) const {
    return other.lo >= lo - tol && other.hi <= hi + tol;
  }
};

/// Vertex-listed convex polytope: columns are vertices.
using Piece = Mat;

/// Finite union of polytopes, each given by the convex hull of its vertices.
class CompactSet {
 public:
  CompactSet() = default;

  explicit CompactSet(std::vector<Piece> pieces) : pieces_(std::move(pieces)) { validate(); }

  static CompactSet from_points(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("CompactSet: empty piece");
    Piece p(points.front().size(), static_cast<Eigen::Index>(points.size()));
    for (size_t j = 0; j < points.size(); ++j) p.col(static_cast<Eigen::Index>(j)) = points[j];
    return CompactSet({p});
  }

  static CompactSet point(const Vec& x) { return from_points({x}); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  int dimension() const { return pieces_.empty() ? 0 : static_cast<int>(pieces_.front().rows()); }

  int vertex_count() const {
    int c = 0;
    for (const auto& p : pieces_) c += static_cast<int>(p.cols());
    return c;
  }

  /// All vertices of all pieces as columns of one matrix.
  Mat vertices() const {
    Mat all(dimension(), vertex_count());
    int c = 0;
    for (const auto& p : pieces_) {
      all.middleCols(c, p.cols()) = p;
      c += static_cast<int>(p.cols());
    }
    return all;
  }

  /// Applies x -> rotation * x + shift to every vertex.
  CompactSet transformed(const Mat& rotation, const Vec& shift) const {
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back((rotation * p).colwise() + shift);
    return CompactSet(std::move(out));
  }

  /// Orthogonal projection of every vertex by the symmetric matrix `proj`.
  CompactSet projected(const Mat& proj) const {
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(proj * p);
    return CompactSet(std::move(out));
  }

 private:
  void validate() const {
    if (pieces_.empty()) throw std::invalid_argument("CompactSet: no pieces");
    const auto n = pieces_.front().rows();
    if (n < kMinDimension || n > kMaxDimension) {
      throw std::invalid_argument("CompactSet: unsupported dimension " + std::to_string(n));
    }
    for (const auto& p : pieces_) {
      if (p.cols() == 0) throw std::invalid_argument("CompactSet: empty piece");
      if (p.rows() != n) throw std::invalid_argument("CompactSet: mixed vertex dimensions");
      if (!p.allFinite()) throw std::invalid_argument("CompactSet: non-finite vertex");
    }
  }

  std::vector<Piece> pieces_;
};

inline CompactSet union_of(const std::vector<CompactSet>& sets) {
  std::vector<Piece> pieces;
  for (const auto& s : sets) pieces.insert(pieces.end(), s.pieces().begin(), s.pieces().end());
  return CompactSet(std::move(pieces));
}

/// Euclidean norm or a p-norm with 1 < p < infinity.
class Norm {
 public:
  static Norm euclidean() { return Norm(2.0); }
  static Norm p_norm(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      throw std::invalid_argument("Norm: exponent must lie strictly between 1 and infinity");
    }
    return Norm(p);
  }

  double exponent() const { return p_; }
  bool is_euclidean() const { return p_ == 2.0; }

  double operator()(const Eigen::Ref<const Vec>& v) const {
    if (is_euclidean()) return v.norm();
    const double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    return m * std::pow((v.cwiseAbs() / m).array().pow(p_).sum(), 1.0 / p_);
  }

 private:
  explicit Norm(double p) : p_(p) {}
  double p_;
};

/// Affine k-flat: orthonormal direction basis plus a base point orthogonal to it.
struct Flat {
  Mat basis;  // n x k, orthonormal columns
  Vec base;   // orthogonal to span(basis)

  int dimension() const { return static_cast<int>(basis.cols()); }
  int ambient() const { return static_cast<int>(base.size()); }

  /// Projector onto the orthogonal complement of the direction space.
  Mat complement_projector() const {
    return Mat::Identity(ambient(), ambient()) - basis * basis.transpose();
  }

  /// Builds a flat through `point` with direction span(directions).
  static Flat through(const Vec& point, const Mat& directions);
};

/// Hyperplane {x : x . normal = offset}; H- is x . normal <= offset.
struct OrientedHyperplane {
  Vec normal;
  double offset = 0.0;

  static OrientedHyperplane make(const Vec& normal, double offset) {
    const double len = normal.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw std::invalid_argument("OrientedHyperplane: zero normal");
    }
    return {normal / len, offset / len};
  }

  double signed_distance(const Eigen::Ref<const Vec>& x) const { return x.dot(normal) - offset; }
  OrientedHyperplane flipped() const { return {-normal, -offset}; }
};

/// Modified Gram-Schmidt; keeps the direction of each column relative to the
/// previous ones. Columns that collapse are replaced by a completion vector.
inline Mat orthonormalize(const Mat& columns) {
  Mat q = columns;
  const auto n = q.rows();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    double len = q.col(j).norm();
    if (len < 1e-12) {
      for (Eigen::Index e = 0; e < n && len < 1e-12; ++e) {
        Vec cand = Vec::Unit(n, e);
        for (Eigen::Index i = 0; i < j; ++i) cand -= q.col(i).dot(cand) * q.col(i);
        len = cand.norm();
        if (len > 1e-6) q.col(j) = cand;
      }
      len = q.col(j).norm();
    }
    q.col(j) /= len;
  }
  return q;
}

/// Orthonormal basis of the orthogonal complement of span(basis).
inline Mat complement_basis(const Mat& basis) {
  const auto n = basis.rows();
  const auto k = basis.cols();
  Mat full(n, n);
  full.leftCols(k) = basis;
  // Append the standard basis vectors least aligned with the span first.
  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index e = 0; e < n; ++e) {
    order.emplace_back(k == 0 ? 0.0 : basis.row(e).squaredNorm(), e);
  }
  std::stable_sort(order.begin(), order.end());
  Mat cand(n, n);
  cand.leftCols(k) = basis;
  Eigen::Index c = k;
  for (auto [w, e] : order) {
    if (c == n) break;
    Vec v = Vec::Unit(n, e);
    for (Eigen::Index i = 0; i < c; ++i) v -= cand.col(i).dot(v) * cand.col(i);
    if (v.norm() > 1e-8) cand.col(c++) = v.normalized();
  }
  return orthonormalize(cand).rightCols(n - k);
}

inline Flat Flat::through(const Vec& point, const Mat& directions) {
  const auto n = point.size();
  if (directions.rows() != n) throw std::invalid_argument("Flat: dimension mismatch");
  if (directions.cols() >= n) throw std::invalid_argument("Flat: need 0 <= k < n");
  Flat f;
  f.basis = directions.cols() == 0 ? Mat(n, 0) : orthonormalize(directions);
  f.base = point - f.basis * (f.basis.transpose() * point);
  return f;
}

struct SupportValue {
  double value = -std::numeric_limits<double>::infinity();
  int piece = -1;
  int vertex = -1;
};

/// Support function h(u) = max over all vertices of x . u, with the attaining vertex.
inline SupportValue support_with_vertex(const CompactSet& set, const Vec& u) {
  if (u.size() != set.dimension()) throw std::invalid_argument("support: dimension mismatch");
  if (!(u.norm() > 0.0)) throw std::invalid_argument("support: zero direction");
  SupportValue best;
  for (int p = 0; p < static_cast<int>(set.pieces().size()); ++p) {
    Eigen::Index j = 0;
    const double v = (u.transpose() * set.pieces()[p]).maxCoeff(&j);
    if (v > best.value) best = {v, p, static_cast<int>(j)};
  }
  return best;
}

inline double support(const CompactSet& set, const Vec& u) { return support_with_vertex(set, u).value; }

inline void require_unit(const Vec& u, const char* what) {
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + ": direction must be a unit vector");
  }
}

/// Projection of conv(set) to the line spanned by unit `u`.
inline Segment projection_interval(const CompactSet& set, const Vec& u) {
  require_unit(u, "projection_interval");
  return {-support(set, -u), support(set, u)};
}

/// Per-piece projection intervals along `u`, unsorted.
inline std::vector<Segment> piece_intervals(const CompactSet& set, const Vec& u) {
  std::vector<Segment> out;
  out.reserve(set.pieces().size());
  for (const auto& p : set.pieces()) {
    Eigen::RowVectorXd proj = u.transpose() * p;
    out.push_back({proj.minCoeff(), proj.maxCoeff()});
  }
  return out;
}

/// True iff the union of per-piece intervals covers the whole projection.
inline bool is_connected_projection(const CompactSet& set, const Vec& u, double gap_tol = kGeoTol) {
  require_unit(u, "is_connected_projection");
  auto parts = piece_intervals(set, u);
  std::sort(parts.begin(), parts.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  double reach = parts.front().hi;
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].lo > reach + gap_tol) return false;
    reach = std::max(reach, parts[i].hi);
  }
  return true;
}

namespace detail {

inline void project_to_simplex(Vec& w) {
  const auto m = w.size();
  Vec s = w;
  std::sort(s.data(), s.data() + m, std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    cum += s(i);
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s(i) - t > 0.0) theta = t;
  }
  w = (w.array() - theta).max(0.0);
}

// min over the simplex of |P w - x|_p^p / p, started from `w`.
inline double pnorm_distance_to_hull(const Piece& piece, const Vec& x, double p, Vec w) {
  auto value = [&](const Vec& lam) {
    return ((piece * lam - x).cwiseAbs().array().pow(p)).sum() / p;
  };
  auto grad = [&](const Vec& lam) {
    Vec r = piece * lam - x;
    Vec g = r.array().sign() * r.cwiseAbs().array().pow(p - 1.0);
    return Vec(piece.transpose() * g);
  };
  double step = 1.0 / std::max(1e-12, piece.squaredNorm());
  Vec y = w;
  Vec w_prev = w;
  double t = 1.0;
  double fw = value(w);
  constexpr int kBudget = 2000;
  for (int it = 0; it < kBudget; ++it) {
    const Vec g = grad(y);
    const double fy = value(y);
    Vec next;
    for (int bt = 0; bt < 60; ++bt) {
      next = y - step * g;
      project_to_simplex(next);
      const Vec d = next - y;
      if (value(next) <= fy + g.dot(d) + d.squaredNorm() / (2.0 * step) + 1e-18) break;
      step *= 0.5;
    }
    const double fn = value(next);
    if (fn > fw) {  // restart momentum
      y = w;
      t = 1.0;
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - w);
    w_prev = w;
    w = next;
    t = t_next;
    const double change = (w - w_prev).norm();
    fw = fn;
    step *= 1.5;
    if (change < 1e-15) break;
  }
  return Norm::p_norm(p)(piece * w - x);
}

}  // namespace detail

/// Distance from x to conv(piece) in the given norm.
inline double distance_to_piece(const Vec& x, const Piece& piece, const Norm& norm) {
  const MinNormResult mn = min_norm_point(piece.colwise() - x);
  if (norm.is_euclidean() || mn.distance <= 1e-14) return mn.distance;
  return detail::pnorm_distance_to_hull(piece, x, norm.exponent(), mn.weights);
}

/// Distance from x to the set (minimum over pieces of the distance to each hull).
inline double distance_point_set(const Vec& x, const CompactSet& set, const Norm& norm = Norm::euclidean()) {
  if (x.size() != set.dimension()) throw std::invalid_argument("distance_point_set: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : set.pieces()) best = std::min(best, distance_to_piece(x, p, norm));
  return best;
}

/// Distance from x to the flat, measured in the fiber (orthogonal complement).
inline double distance_point_flat(const Vec& x, const Flat& flat, const Norm& norm = Norm::euclidean()) {
  const Vec r = x - flat.basis * (flat.basis.transpose() * x) - flat.base;
  return norm(r);
}

/// Minimum distance from the set to the flat.
inline double flat_distance(const CompactSet& set, const Flat& flat, const Norm& norm = Norm::euclidean()) {
  if (flat.ambient() != set.dimension()) throw std::invalid_argument("flat_distance: dimension mismatch");
  return distance_point_set(flat.base, set.projected(flat.complement_projector()), norm);
}

/// Deviation sup_{x in X} dist(x, Y); attained at a vertex of X.
inline double deviation(const CompactSet& from, const Flat& to, const Norm& norm = Norm::euclidean()) {
  double best = 0.0;
  for (const auto& p : from.pieces()) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) best = std::max(best, distance_point_flat(p.col(j), to, norm));
  }
  return best;
}

inline double deviation(const CompactSet& from, const CompactSet& to, const Norm& norm = Norm::euclidean()) {
  double best = 0.0;
  for (const auto& p : from.pieces()) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) best = std::max(best, distance_point_set(p.col(j), to, norm));
  }
  return best;
}

/// Distance between the hulls of two pieces (Euclidean).
inline double piece_distance(const Piece& a, const Piece& b) {
  Mat diff(a.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) diff.col(i * b.cols() + j) = a.col(i) - b.col(j);
  }
  return min_norm_point(diff).distance;
}

}  // namespace flatcert
