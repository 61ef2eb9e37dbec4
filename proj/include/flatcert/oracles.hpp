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

// Brute-force references. Every routine here is deliberately naive: dense
// sweeps, full enumeration, direct dot products. They share no code with the
// solvers beyond the data types, so agreement between the two is evidence.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/caps.hpp"
#include "flatcert/digest.hpp"
#include "flatcert/geometry.hpp"
#include "flatcert/lp.hpp"
#include "flatcert/measure.hpp"

namespace flatcert::oracle {

struct OracleReport {
  std::string task;
  std::string digest;
  long long count = 0;  // number of parameters evaluated
  double best = -std::numeric_limits<double>::infinity();
  Vec witness;          // best direction
  double offset = 0.0;  // best offset along the witness direction
};

inline std::string digest_of(const std::vector<CompactSet>& sets) {
  Digest d;
  d.integer(static_cast<long long>(sets.size()));
  for (const auto& s : sets) {
    d.integer(static_cast<long long>(s.pieces().size()));
    for (const auto& p : s.pieces()) d.matrix(p);
  }
  return d.hex();
}

inline std::string digest_of(const std::vector<MeasureWithDeviation>& ms) {
  Digest d;
  d.integer(static_cast<long long>(ms.size()));
  for (const auto& m : ms) d.matrix(m.points()).matrix(m.weights()).number(m.eps());
  return d.hex();
}

/// Unit directions for the sweeps: `count` equally spaced angles on S^1, or a
/// latitude-longitude net of S^2 with at least `count` nodes.
inline std::vector<Vec> sweep_directions(int n, long long count) {
  std::vector<Vec> out;
  if (n == 2) {
    for (long long i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count);
      out.push_back(vec({std::cos(a), std::sin(a)}));
    }
    return out;
  }
  if (n == 3) {
    const int rings = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count) / 2.0)));
    for (int i = 0; i < rings; ++i) {
      const double th = kPi * (i + 0.5) / rings;
      for (int j = 0; j < 2 * rings; ++j) {
        const double ph = kPi * j / rings;
        out.push_back(vec({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
      }
    }
    return out;
  }
  throw std::invalid_argument("oracle: unsupported dimension " + std::to_string(n));
}

inline Segment naive_interval(const CompactSet& s, const Vec& u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : s.pieces()) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      double d = 0.0;
      for (Eigen::Index r = 0; r < p.rows(); ++r) d += p(r, j) * u(r);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  return {lo, hi};
}

using SegmentFamily = std::function<std::vector<Segment>(const Vec&)>;

/// Largest min_i hi_i - max_i lo_i over the sweep.
inline OracleReport overlap_sweep(const SegmentFamily& segs, int n, long long count) {
  OracleReport r;
  r.task = "overlap";
  for (const Vec& u : sweep_directions(n, count)) {
    const auto s = segs(u);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& x : s) {
      lo = std::max(lo, x.lo);
      hi = std::min(hi, x.hi);
    }
    ++r.count;
    if (hi - lo > r.best) {
      r.best = hi - lo;
      r.witness = u;
      r.offset = 0.5 * (lo + hi);
    }
  }
  return r;
}

/// Largest min_{I2} lo - max_{I1} hi over the sweep.
inline OracleReport separation_sweep(const SegmentFamily& segs, const std::vector<int>& i1,
                                     const std::vector<int>& i2, int n, long long count) {
  OracleReport r;
  r.task = "separation";
  for (const Vec& u : sweep_directions(n, count)) {
    const auto s = segs(u);
    double left = -std::numeric_limits<double>::infinity();
    double right = std::numeric_limits<double>::infinity();
    for (int i : i1) left = std::max(left, s[i].hi);
    for (int i : i2) right = std::min(right, s[i].lo);
    ++r.count;
    if (right - left > r.best) {
      r.best = right - left;
      r.witness = u;
      r.offset = 0.5 * (left + right);
    }
  }
  return r;
}

inline SegmentFamily set_segments(const std::vector<CompactSet>& sets) {
  return [sets](const Vec& u) {
    std::vector<Segment> out;
    for (const auto& s : sets) out.push_back(naive_interval(s, u));
    return out;
  };
}

/// Per family the intersection of member intervals.
inline SegmentFamily family_segments(const std::vector<std::vector<CompactSet>>& families) {
  return [families](const Vec& u) {
    std::vector<Segment> out;
    for (const auto& f : families) {
      Segment s{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
      for (const auto& c : f) {
        const Segment x = naive_interval(c, u);
        s.lo = std::max(s.lo, x.lo);
        s.hi = std::min(s.hi, x.hi);
      }
      out.push_back(s);
    }
    return out;
  };
}

/// Interpolated CDF at t along u, evaluated directly from the atoms.
inline double naive_cdf(const MeasureWithDeviation& mu, const Vec& u, double t) {
  const Eigen::RowVectorXd p = u.transpose() * mu.points();
  const Vec& w = mu.weights();
  double first = p.minCoeff();
  double last = p.maxCoeff();
  if (t < first) return 0.0;
  if (t > last) return 1.0;
  auto value_at = [&](double pos) {
    double below = 0.0;
    double at = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (p(j) < pos) below += w(j);
      if (p(j) == pos) at += w(j);
    }
    return below + 0.5 * at;
  };
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j) <= t) a = std::max(a, p(j));
    if (p(j) >= t) b = std::min(b, p(j));
  }
  if (a == b) return value_at(a);
  return value_at(a) + (t - a) / (b - a) * (value_at(b) - value_at(a));
}

// Offset where the naive CDF reaches alpha, by bisection on [first, last].
inline double naive_quantile(const MeasureWithDeviation& mu, const Vec& u, double alpha) {
  const Eigen::RowVectorXd p = u.transpose() * mu.points();
  double lo = p.minCoeff();
  double hi = p.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (naive_cdf(mu, u, mid) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Offsets of reliably intersecting hyperplanes, from the naive CDF.
inline SegmentFamily measure_segments(const std::vector<MeasureWithDeviation>& ms) {
  return [ms](const Vec& u) {
    std::vector<Segment> out;
    for (const auto& mu : ms) {
      const Eigen::RowVectorXd p = u.transpose() * mu.points();
      const double first = p.minCoeff();
      const double last = p.maxCoeff();
      const double lo = naive_cdf(mu, u, first) >= mu.eps() ? first : naive_quantile(mu, u, mu.eps());
      const double hi = naive_cdf(mu, u, last) <= 1.0 - mu.eps() ? last : naive_quantile(mu, u, 1.0 - mu.eps());
      out.push_back({lo, hi});
    }
    return out;
  };
}

/// For prescribed fractions: per direction, places the hyperplane at the
/// first measure's alpha-quantile and scores max_i |mass_i - alpha_i|.
/// Reports the smallest score found (as a negative "best").
inline OracleReport fraction_sweep(const std::vector<MeasureWithDeviation>& ms, const std::vector<double>& alpha,
                                   int n, long long count) {
  OracleReport r;
  r.task = "fractions";
  r.digest = digest_of(ms);
  for (const Vec& u : sweep_directions(n, count)) {
    const double t = naive_quantile(ms[0], u, alpha[0]);
    double worst = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) worst = std::max(worst, std::abs(naive_cdf(ms[i], u, t) - alpha[i]));
    ++r.count;
    if (-worst > r.best) {
      r.best = -worst;
      r.witness = u;
      r.offset = t;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Planar convex hulls and exact 2-D predicates.

using P2 = Eigen::Vector2d;

/// Counterclockwise hull (monotone chain); collinear points dropped.
inline std::vector<P2> hull_2d(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const P2& o, const P2& a, const P2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<P2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline std::vector<P2> points_2d(const CompactSet& s) {
  std::vector<P2> out;
  for (const auto& p : s.pieces()) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) out.emplace_back(p(0, j), p(1, j));
  }
  return out;
}

// Angular interval [start, start + width] of outer normals at p, or width < 0
// if p is not on the hull boundary.
struct NormalArc {
  double start = 0.0;
  double width = -1.0;
};

inline NormalArc normal_arc(const std::vector<P2>& hull, const P2& p, double tol) {
  const size_t m = hull.size();
  std::vector<double> normals;
  for (size_t i = 0; i < m; ++i) {
    const P2 a = hull[i];
    const P2 b = hull[(i + 1) % m];
    const P2 e = b - a;
    const double len = e.norm();
    const double s = std::clamp((p - a).dot(e) / (len * len), 0.0, 1.0);
    if ((a + s * e - p).norm() <= tol) normals.push_back(std::atan2(-e.x(), e.y()));
  }
  if (normals.empty()) return {};
  if (normals.size() == 1) return {normals[0], 0.0};
  // A vertex: the two incident edges. Pick the ordering giving the short arc.
  double w = std::remainder(normals[1] - normals[0], 2.0 * kPi);
  if (w >= 0) return {normals[0], w};
  return {normals[1], -w};
}

inline bool arcs_meet(const NormalArc& a, const NormalArc& b, double tol) {
  auto inside = [&](double ang, const NormalArc& arc) {
    double d = std::fmod(ang - arc.start, 2.0 * kPi);
    if (d < 0) d += 2.0 * kPi;
    return d <= arc.width + tol || d >= 2.0 * kPi - tol;
  };
  return inside(a.start, b) || inside(b.start, a);
}

/// Antipodality of boundary points x, y of a planar convex polygon, by
/// intersecting the normal arc at x with the reflected normal arc at y.
inline bool antipodal_pair_2d(const P2& x, const P2& y, const std::vector<P2>& polygon, double tol = 1e-9) {
  const auto hull = hull_2d(polygon);
  const NormalArc ax = normal_arc(hull, x, tol);
  NormalArc ay = normal_arc(hull, y, tol);
  if (ax.width < 0 || ay.width < 0) return false;
  ay.start += kPi;
  return arcs_meet(ax, ay, 1e-9);
}

/// Separating-axis check of two planar point sets: the best gap
/// min_B u.b - max_A u.a over all hull edge normals of both sets.
inline double separation_gap_2d(const std::vector<P2>& a, const std::vector<P2>& b) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto* pts : {&a, &b}) {
    const auto h = hull_2d(*pts);
    for (size_t i = 0; i < h.size(); ++i) {
      const P2 e = h[(i + 1) % h.size()] - h[i];
      for (double sign : {1.0, -1.0}) {
        const P2 u = sign * P2(e.y(), -e.x()).normalized();
        double hi_a = -std::numeric_limits<double>::infinity();
        double lo_b = std::numeric_limits<double>::infinity();
        for (const auto& p : a) hi_a = std::max(hi_a, u.dot(p));
        for (const auto& p : b) lo_b = std::min(lo_b, u.dot(p));
        best = std::max(best, lo_b - hi_a);
      }
    }
  }
  return best;
}

/// Equalized-segment definition, restated: the overlap condition is checked on
/// 101 sample points of the common core.
inline int equalized(const std::vector<Segment>& a, const std::vector<Segment>& b, double tol = 1e-9) {
  auto spread = [](const std::vector<Segment>& s, bool hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (const auto& x : s) {
      mn = std::min(mn, hi ? x.hi : x.lo);
      mx = std::max(mx, hi ? x.hi : x.lo);
    }
    return mx - mn;
  };
  auto core_ok = [&](double from, double to) {
    if (from >= to - tol) return true;
    for (int i = 0; i <= 100; ++i) {
      const double t = from + (to - from) * i / 100.0;
      for (const auto* fam : {&a, &b}) {
        for (const auto& s : *fam) {
          if (t < s.lo - tol || t > s.hi + tol) return false;
        }
      }
    }
    return true;
  };
  if (spread(a, true) <= tol && spread(b, false) <= tol && core_ok(b.front().lo, a.front().hi)) return 1;
  if (spread(b, true) <= tol && spread(a, false) <= tol && core_ok(a.front().lo, b.front().hi)) return 2;
  return 0;
}

// ---------------------------------------------------------------------------
// Systems of representatives.

struct TupleReport {
  long long tuples = 0;
  long long empty = 0;
  std::vector<std::vector<int>> empty_tuples;
};

/// Feasibility of conv(V_1) ∩ ... ∩ conv(V_q) through the equality system
/// V_1 l_1 = V_j l_j, sum l_j = 1, l_j >= 0 (phase one only).
inline bool hulls_intersect(const std::vector<Piece>& hulls) {
  const int q = static_cast<int>(hulls.size());
  if (q <= 1) return true;
  const auto n = hulls.front().rows();
  std::vector<int> offset(q + 1, 0);
  for (int j = 0; j < q; ++j) offset[j + 1] = offset[j] + static_cast<int>(hulls[j].cols());
  Mat m = Mat::Zero(n * (q - 1) + q, offset[q]);
  Vec d = Vec::Zero(m.rows());
  for (int j = 1; j < q; ++j) {
    m.block(n * (j - 1), offset[0], n, hulls[0].cols()) = hulls[0];
    m.block(n * (j - 1), offset[j], n, hulls[j].cols()) = -hulls[j];
  }
  for (int j = 0; j < q; ++j) {
    m.block(n * (q - 1) + j, offset[j], 1, hulls[j].cols()).setOnes();
    d(n * (q - 1) + j) = 1.0;
  }
  return lp::solve_standard(m, d, Vec::Zero(m.cols())).status == lp::Status::kOptimal;
}

inline TupleReport tuple_intersection(const std::vector<std::vector<CompactSet>>& families, long long budget = 100000) {
  long long total = 1;
  for (const auto& f : families) {
    total *= static_cast<long long>(f.size());
    if (total > budget) throw std::invalid_argument("tuple_intersection: budget exceeded");
  }
  TupleReport r;
  std::vector<int> idx(families.size(), 0);
  for (long long t = 0; t < total; ++t) {
    std::vector<Piece> hulls;
    for (size_t i = 0; i < families.size(); ++i) hulls.push_back(families[i][idx[i]].vertices());
    ++r.tuples;
    if (!hulls_intersect(hulls)) {
      ++r.empty;
      r.empty_tuples.push_back(idx);
    }
    for (size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < static_cast<int>(families[i].size())) break;
      idx[i] = 0;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Line transversals.

// Sutherland-Hodgman clip of a convex polygon by the half-plane left of a->b.
inline std::vector<P2> clip(const std::vector<P2>& poly, const P2& a, const P2& b) {
  std::vector<P2> out;
  auto side = [&](const P2& p) { return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x()); };
  for (size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    const double sp = side(p);
    const double sq = side(q);
    if (sp >= 0) out.push_back(p);
    if ((sp >= 0) != (sq >= 0)) out.push_back(p + (sp / (sp - sq)) * (q - p));
  }
  return out;
}

struct LineReport {
  bool feasible = false;
  long long count = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  Vec direction;
};

/// Dense sweep over line directions. In R^2 a line with normal u meets every
/// set iff the projections onto u overlap; in R^3 a line with direction d does
/// iff the projected hulls in d's orthogonal plane share a point.
inline LineReport line_transversal(const std::vector<CompactSet>& sets, long long count) {
  const int n = sets.front().dimension();
  LineReport r;
  if (n == 2) {
    for (long long i = 0; i < count; ++i) {
      const double a = kPi * static_cast<double>(i) / static_cast<double>(count);
      const Vec u = vec({std::cos(a), std::sin(a)});
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (const auto& s : sets) {
        const auto x = naive_interval(s, u);
        lo = std::max(lo, x.lo);
        hi = std::min(hi, x.hi);
      }
      ++r.count;
      const double res = std::max(0.0, 0.5 * (lo - hi));
      if (res < r.best_residual) {
        r.best_residual = res;
        r.direction = vec({-u(1), u(0)});
      }
    }
  } else if (n == 3) {
    for (const Vec& d : sweep_directions(3, 2 * count)) {
      if (d(2) < 0) continue;
      const Eigen::Vector3d d3(d(0), d(1), d(2));
      const Eigen::Vector3d seed3 = std::abs(d(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
      const Vec e1 = seed3.cross(d3).normalized();
      const Vec e2 = d3.cross(Eigen::Vector3d(e1)).normalized();
      std::vector<P2> region;
      bool first = true;
      double worst = 0.0;
      for (const auto& s : sets) {
        std::vector<P2> pts;
        const Mat v = s.vertices();
        for (Eigen::Index j = 0; j < v.cols(); ++j) pts.emplace_back(e1.dot(v.col(j)), e2.dot(v.col(j)));
        const auto h = hull_2d(pts);
        if (first) {
          region = h;
          first = false;
        } else {
          for (size_t i = 0; i < h.size() && !region.empty(); ++i) region = clip(region, h[i], h[(i + 1) % h.size()]);
        }
      }
      ++r.count;
      if (region.empty()) worst = 1.0;
      if (worst < r.best_residual) {
        r.best_residual = worst;
        r.direction = d;
      }
    }
  } else {
    throw std::invalid_argument("line_transversal: unsupported dimension");
  }
  r.feasible = r.best_residual <= 1e-9;
  return r;
}

// ---------------------------------------------------------------------------
// Quota assignments.

/// Tries every map W -> V. Returns whether an edge-respecting map with
/// |tau^{-1}(v)| = quota(v) exists.
inline bool quota_assignment_exists(int nv, int nw, const std::vector<std::vector<bool>>& adj,
                                    const std::vector<int>& quota) {
  long long total = 1;
  for (int w = 0; w < nw; ++w) total *= nv;
  std::vector<int> tau(nw, 0);
  for (long long t = 0; t < total; ++t) {
    long long code = t;
    bool ok = true;
    std::vector<int> load(nv, 0);
    for (int w = 0; w < nw; ++w) {
      tau[w] = static_cast<int>(code % nv);
      code /= nv;
      if (!adj[tau[w]][w]) {
        ok = false;
        break;
      }
      ++load[tau[w]];
    }
    if (ok && load == quota) return true;
  }
  return false;
}

}  // namespace flatcert::oracle
