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

// Seeded instance generators. Every generator is a pure function of its
// arguments and the state of the engine passed in.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "flatcert/caps.hpp"
#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/measure.hpp"
#include "flatcert/predicates.hpp"
#include "flatcert/shapes.hpp"

namespace flatcert::gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Vec random_unit(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Convex polygon with m vertices at sorted random angles on a circle.
inline Piece random_polygon(Rng& rng, const Vec& center, double radius, int m) {
  std::vector<double> ang(m);
  for (auto& a : ang) a = uniform(rng, 0.0, 2.0 * kPi);
  std::sort(ang.begin(), ang.end());
  Piece p(2, m);
  for (int j = 0; j < m; ++j) {
    p(0, j) = center(0) + radius * std::cos(ang[j]);
    p(1, j) = center(1) + radius * std::sin(ang[j]);
  }
  return p;
}

/// Random polytope in R^3: m points on a sphere around center.
inline Piece random_polytope3(Rng& rng, const Vec& center, double radius, int m) {
  Piece p(3, m);
  for (int j = 0; j < m; ++j) p.col(j) = center + radius * random_unit(rng, 3);
  return p;
}

/// count random convex polygons (n = 2) or polytopes (n = 3) with centers in
/// [-spread, spread]^n and radii in [r_lo, r_hi].
inline std::vector<CompactSet> convex_tuple(Rng& rng, int n, int count, double spread = 3.0, double r_lo = 0.5,
                                            double r_hi = 2.0, int max_vertices = 8) {
  if (n != 2 && n != 3) throw std::invalid_argument("convex_tuple: n must be 2 or 3");
  std::vector<CompactSet> out;
  for (int i = 0; i < count; ++i) {
    Vec c(n);
    for (int d = 0; d < n; ++d) c(d) = uniform(rng, -spread, spread);
    const double r = uniform(rng, r_lo, r_hi);
    const int m = uniform_int(rng, n + 1, std::max(n + 1, max_vertices));
    out.emplace_back(std::vector<Piece>{n == 2 ? random_polygon(rng, c, r, m) : random_polytope3(rng, c, r, m)});
  }
  return out;
}

/// Three polygons near the vertices of a perturbed equilateral triangle with
/// side about `side`. Polygon radii stay in [r_lo, r_hi]; the result is
/// retried until the family is non-antipodal. With `regular` the polygons are
/// regular, so radii above 0.6 side make every pair of them intersect.
inline std::vector<CompactSet> non_antipodal_triple(Rng& rng, double side, double r_lo, double r_hi,
                                                    int vertices = 12, bool regular = false) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double phase = uniform(rng, 0.0, 2.0 * kPi);
    const double circum = side / std::sqrt(3.0);
    std::vector<CompactSet> out;
    for (int i = 0; i < 3; ++i) {
      const double a = phase + 2.0 * kPi * i / 3.0 + uniform(rng, -0.12, 0.12);
      const Vec c = circum * uniform(rng, 0.9, 1.1) * vec({std::cos(a), std::sin(a)});
      const double r = uniform(rng, r_lo, r_hi);
      out.emplace_back(std::vector<Piece>{regular ? shapes::regular_polygon(c, r, vertices, uniform(rng, 0.0, 2.0 * kPi))
                                                  : random_polygon(rng, c, r, vertices)});
    }
    if (is_non_antipodal_family(out).non_antipodal) return out;
  }
  throw std::runtime_error("non_antipodal_triple: no non-antipodal sample found");
}

/// Four bodies in R^3: body i is the hull of a point inside the unit ball
/// and unit-sphere points within `cap_deg` of the i-th tetrahedral direction.
/// Caps wider than the tetrahedral half-angle overlap, so the hull of the
/// union is close to the ball and no body holds an antipodal pair.
inline std::vector<CompactSet> non_antipodal_quadruple(Rng& rng, double cap_deg = 78.0, int samples = 24) {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec> dirs = {vec({s, s, s}), vec({s, -s, -s}), vec({-s, s, -s}), vec({-s, -s, s})};
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Mat rot = random_rotation(3, rng);
    std::vector<CompactSet> out;
    for (const Vec& d0 : dirs) {
      const Vec d = rot * d0;
      const double cap = (cap_deg + uniform(rng, -2.0, 2.0)) * kPi / 180.0;
      std::vector<Vec> pts{uniform(rng, 0.2, 0.5) * d};
      while (static_cast<int>(pts.size()) < samples + 1) {
        const Vec x = random_unit(rng, 3);
        if (angle_between(x, d) <= cap) pts.push_back(x);
      }
      out.push_back(CompactSet::from_points(pts));
    }
    if (is_non_antipodal_family(out).non_antipodal) return out;
  }
  throw std::runtime_error("non_antipodal_quadruple: no non-antipodal sample found");
}

/// Gaussian cloud of `atoms` equally weighted points.
inline MeasureWithDeviation cloud(Rng& rng, const Vec& center, double sigma, int atoms, double eps) {
  std::normal_distribution<double> normal(0.0, sigma);
  Mat pts(center.size(), atoms);
  for (int j = 0; j < atoms; ++j) {
    for (Eigen::Index d = 0; d < center.size(); ++d) pts(d, j) = center(d) + normal(rng);
  }
  return MeasureWithDeviation::uniform(pts, eps);
}

/// count clouds in R^n; with `separated` the centers sit on a circle (or
/// sphere) of radius 10 and the clouds are clipped to radius 3, so their
/// support hulls are pairwise disjoint.
inline std::vector<MeasureWithDeviation> measure_family(Rng& rng, int n, int count, int atoms, bool separated,
                                                        double eps_lo = 0.0, double eps_hi = 0.0) {
  std::vector<MeasureWithDeviation> out;
  const double phase = uniform(rng, 0.0, 2.0 * kPi);
  for (int i = 0; i < count; ++i) {
    Vec c(n);
    if (separated && n == 2) {
      const double a = phase + 2.0 * kPi * i / count;
      c = 10.0 * vec({std::cos(a), std::sin(a)});
    } else if (separated) {
      c = 10.0 * random_unit(rng, n);
    } else {
      for (int d = 0; d < n; ++d) c(d) = uniform(rng, -2.0, 2.0);
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat pts(n, atoms);
    for (int j = 0; j < atoms; ++j) {
      Vec x(n);
      do {
        for (int d = 0; d < n; ++d) x(d) = normal(rng);
      } while (separated && x.norm() > 3.0);
      pts.col(j) = c + x;
    }
    const double eps = eps_hi > eps_lo ? uniform(rng, eps_lo, eps_hi) : eps_lo;
    out.push_back(MeasureWithDeviation::uniform(pts, eps));
  }
  return out;
}

/// Three arcs covering S^1, each shorter than 180 degrees so none contains
/// an antipodal pair: arc i starts near 120 i and spans 120 + overlap.
inline std::vector<CapUnion> arc_cover(Rng& rng) {
  std::vector<CapUnion> out;
  const double phase = uniform(rng, 0.0, 360.0);
  std::vector<double> start(3);
  for (int i = 0; i < 3; ++i) start[i] = phase + 120.0 * i + uniform(rng, -10.0, 10.0);
  for (int i = 0; i < 3; ++i) {
    const double next = start[(i + 1) % 3] + (i == 2 ? 360.0 : 0.0);
    const double end = next + uniform(rng, 10.0, 40.0);
    out.emplace_back(std::vector<Cap>{CapUnion::arc(start[i], std::min(end, start[i] + 175.0))});
  }
  return out;
}

/// Four caps of S^2 centered at rotated tetrahedral directions. Radii in
/// [72, 80] degrees cover the sphere and keep each cap free of antipodes.
inline std::vector<CapUnion> tetra_cover(Rng& rng) {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec> dirs = {vec({s, s, s}), vec({s, -s, -s}), vec({-s, s, -s}), vec({-s, -s, s})};
  const Mat rot = random_rotation(3, rng);
  std::vector<CapUnion> out;
  for (const Vec& d : dirs) out.emplace_back(std::vector<Cap>{{rot * d, uniform(rng, 72.0, 80.0) * kPi / 180.0}});
  return out;
}

/// Cap families for the half-sphere theorem: n sets on S^{n-1}, each a union
/// of one to three caps. The first cap of every set is wider than a
/// hemisphere, which meets every subsphere.
inline std::vector<CapUnion> halfsphere_family(Rng& rng, int n, int count) {
  std::vector<CapUnion> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Cap> caps{{random_unit(rng, n), uniform(rng, 95.0, 120.0) * kPi / 180.0}};
    const int extra = uniform_int(rng, 0, 2);
    for (int e = 0; e < extra; ++e) caps.push_back({random_unit(rng, n), uniform(rng, 10.0, 60.0) * kPi / 180.0});
    out.emplace_back(std::move(caps));
  }
  return out;
}

struct MatchingInstance {
  int nv = 0;
  int nw = 0;
  std::vector<std::vector<bool>> adj;  // nv x nw
  std::vector<int> quota;             // sums to nw
};

/// Random bipartite graph with |V| <= max_v, |W| <= max_w and positive quotas
/// summing to |W|.
inline MatchingInstance matching(Rng& rng, int max_v = 3, int max_w = 6, double density = 0.5) {
  MatchingInstance m;
  m.nv = uniform_int(rng, 1, max_v);
  m.nw = uniform_int(rng, m.nv, max_w);
  m.quota.assign(m.nv, 1);
  for (int extra = m.nw - m.nv; extra > 0; --extra) ++m.quota[uniform_int(rng, 0, m.nv - 1)];
  std::bernoulli_distribution edge(density);
  m.adj.assign(m.nv, std::vector<bool>(m.nw, false));
  for (int v = 0; v < m.nv; ++v) {
    for (int w = 0; w < m.nw; ++w) m.adj[v][w] = edge(rng);
  }
  return m;
}

}  // namespace flatcert::gen
