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

// Small shape builders: polygons, boxes and polyhedral balls.

#pragma once

#include <cmath>
#include <vector>

#include "flatcert/geometry.hpp"

namespace flatcert::shapes {

/// Regular m-gon inscribed in the circle of radius r around center (2-D).
inline Piece regular_polygon(const Vec& center, double r, int m, double phase = 0.0) {
  Piece p(2, m);
  for (int j = 0; j < m; ++j) {
    const double a = phase + 2.0 * kPi * j / m;
    p(0, j) = center(0) + r * std::cos(a);
    p(1, j) = center(1) + r * std::sin(a);
  }
  return p;
}

inline CompactSet disc(const Vec& center, double r, int m = 64) {
  return CompactSet({regular_polygon(center, r, m)});
}

/// Axis-aligned box [lo, hi].
inline Piece box(const Vec& lo, const Vec& hi) {
  const auto n = lo.size();
  const int count = 1 << n;
  Piece p(n, count);
  for (int mask = 0; mask < count; ++mask) {
    for (Eigen::Index d = 0; d < n; ++d) p(d, mask) = (mask >> d) & 1 ? hi(d) : lo(d);
  }
  return p;
}

/// Cube of half-width h around center.
inline CompactSet cube(const Vec& center, double h) {
  const Vec e = Vec::Constant(center.size(), h);
  return CompactSet({box(center - e, center + e)});
}

/// Polyhedral ball in R^3: points of a latitude-longitude net of the sphere.
inline Piece ball3(const Vec& center, double r, int rings = 8, int per_ring = 16) {
  std::vector<Vec> pts;
  pts.push_back(center + r * vec({0, 0, 1}));
  pts.push_back(center - r * vec({0, 0, 1}));
  for (int i = 1; i < rings; ++i) {
    const double th = kPi * i / rings;
    for (int j = 0; j < per_ring; ++j) {
      const double ph = 2.0 * kPi * j / per_ring + (i % 2) * kPi / per_ring;
      pts.push_back(center + r * vec({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
    }
  }
  Piece p(3, static_cast<Eigen::Index>(pts.size()));
  for (size_t j = 0; j < pts.size(); ++j) p.col(static_cast<Eigen::Index>(j)) = pts[j];
  return p;
}

/// Ball of radius r in R^2 or R^3.
inline CompactSet ball(const Vec& center, double r) {
  if (center.size() == 2) return disc(center, r);
  return CompactSet({ball3(center, r)});
}

}  // namespace flatcert::shapes
