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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/shapes.hpp"

namespace flatcert {
namespace {

CompactSet square() { return shapes::cube(vec({0, 0}), 1.0); }

TEST(Support, SquareAndSingleton) {
  EXPECT_DOUBLE_EQ(support(square(), vec({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(support(CompactSet::point(vec({2, 3})), vec({0, 1})), 3.0);
}

TEST(Support, TriangleDiagonal) {
  const auto tri = CompactSet::from_points({vec({0, 0}), vec({4, 0}), vec({0, 4})});
  EXPECT_NEAR(support(tri, vec({1, 1}).normalized()), 4.0 / std::sqrt(2.0), 1e-12);
}

TEST(Support, ReportsAttainingVertex) {
  const auto tri = CompactSet::from_points({vec({0, 0}), vec({4, 0}), vec({0, 4})});
  const auto s = support_with_vertex(tri, vec({1, -1}));
  EXPECT_EQ(s.vertex, 1);
}

TEST(Support, ZeroDirectionThrows) {
  EXPECT_THROW(support(square(), vec({0, 0})), std::invalid_argument);
}

TEST(ProjectionInterval, Basics) {
  auto s = projection_interval(square(), vec({1, 0}));
  EXPECT_DOUBLE_EQ(s.lo, -1.0);
  EXPECT_DOUBLE_EQ(s.hi, 1.0);
  const CompactSet two({Piece(vec({0, 0})), Piece(vec({3, 0}))});
  s = projection_interval(two, vec({1, 0}));
  EXPECT_DOUBLE_EQ(s.lo, 0.0);
  EXPECT_DOUBLE_EQ(s.hi, 3.0);
  EXPECT_THROW(projection_interval(square(), vec({2, 0})), std::invalid_argument);
}

TEST(ProjectionInterval, PolygonDiscWithinInradiusBound) {
  const auto d = shapes::disc(vec({0, 0}), 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = 0.37 * i;
    const auto s = projection_interval(d, vec({std::cos(a), std::sin(a)}));
    EXPECT_NEAR(s.lo, -1.0, 5e-3);
    EXPECT_NEAR(s.hi, 1.0, 5e-3);
  }
}

TEST(ProjectionInterval, ReversesUnderNegation) {
  const auto tri = CompactSet::from_points({vec({0.3, 0}), vec({4, 1}), vec({-1, 4})});
  const Vec u = vec({0.6, 0.8});
  const auto a = projection_interval(tri, u);
  const auto b = projection_interval(tri, -u);
  EXPECT_DOUBLE_EQ(a.lo, -b.hi);
  EXPECT_DOUBLE_EQ(a.hi, -b.lo);
}

TEST(ConnectedProjection, Cases) {
  EXPECT_TRUE(is_connected_projection(square(), vec({0.6, 0.8})));
  const CompactSet two({Piece(vec({0, 0})), Piece(vec({3, 0}))});
  EXPECT_FALSE(is_connected_projection(two, vec({1, 0})));
  // Eight annular wedges between radii 1 and 2.
  std::vector<Piece> ring;
  for (int j = 0; j < 8; ++j) {
    Piece p(2, 4);
    int c = 0;
    for (double a : {2 * kPi * j / 8, 2 * kPi * (j + 1) / 8}) {
      for (double r : {1.0, 2.0}) p.col(c++) = vec({r * std::cos(a), r * std::sin(a)});
    }
    ring.push_back(p);
  }
  EXPECT_TRUE(is_connected_projection(CompactSet(ring), vec({1, 0})));
}

TEST(Distance, PointToSet) {
  EXPECT_NEAR(distance_point_set(vec({0, 0}), square()), 0.0, 1e-12);
  EXPECT_NEAR(distance_point_set(vec({3, 0}), square()), 2.0, 1e-12);
}

TEST(Distance, FourNormMatchesDenseGrid) {
  // Dense 4001 x 4001 grid minimization over the square.
  constexpr double kGridValue = 1.189207115002721;
  EXPECT_NEAR(distance_point_set(vec({2, 2}), square(), Norm::p_norm(4.0)), kGridValue, 1e-9);
}

TEST(Distance, PNormRejectsBadExponent) {
  EXPECT_THROW(Norm::p_norm(1.0), std::invalid_argument);
  EXPECT_THROW(Norm::p_norm(INFINITY), std::invalid_argument);
}

TEST(Distance, LipschitzOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4, 4);
  const auto tri = CompactSet::from_points({vec({0, 0}), vec({1, 0}), vec({0, 2})});
  for (const Norm& norm : {Norm::euclidean(), Norm::p_norm(3.0)}) {
    for (int i = 0; i < 100; ++i) {
      const Vec a = vec({u(rng), u(rng)});
      const Vec b = vec({u(rng), u(rng)});
      const double diff = std::abs(distance_point_set(a, tri, norm) - distance_point_set(b, tri, norm));
      EXPECT_LE(diff, norm(a - b) + 1e-9);
    }
  }
}

TEST(Deviation, Examples) {
  const auto pts = CompactSet::from_points({vec({0, 0}), vec({3, 0})});
  EXPECT_NEAR(deviation(pts, CompactSet::point(vec({0, 0}))), 3.0, 1e-12);
  const Flat xaxis = Flat::through(vec({0, 0}), Mat(vec({1, 0})));
  EXPECT_NEAR(deviation(square(), xaxis), 1.0, 1e-12);
  const auto tri = CompactSet::from_points({vec({0, 0}), vec({1, 0}), vec({0, 2})});
  const Flat diag = Flat::through(vec({0, 0}), Mat(vec({1, 1})));
  // Point-line distances |x - y| / sqrt(2): 0, 1/sqrt(2), sqrt(2).
  EXPECT_NEAR(deviation(tri, diag), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(deviation(xaxis.base.size() == 2 ? CompactSet::from_points({vec({4, 0})}) : pts, xaxis), 0.0, 1e-12);
}

TEST(FlatDistance, Examples) {
  const Flat xaxis = Flat::through(vec({0, 0}), Mat(vec({1, 0})));
  EXPECT_NEAR(flat_distance(shapes::disc(vec({0, 5}), 1.0), xaxis), 4.0, 5e-3);
  EXPECT_NEAR(flat_distance(square(), xaxis), 0.0, 1e-12);
  const Flat zaxis = Flat::through(vec({0, 0, 0}), Mat(vec({0, 0, 1})));
  EXPECT_NEAR(flat_distance(CompactSet::point(vec({1, 1, 1})), zaxis), std::sqrt(2.0), 1e-12);
}

TEST(FlatDistance, ZeroIffFlatMeetsPiece) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto tri = CompactSet::from_points({vec({0, 0}), vec({2, 0}), vec({0, 2})});
  for (int i = 0; i < 200; ++i) {
    const Vec dir = vec({u(rng), u(rng)});
    const Flat line = Flat::through(vec({u(rng), u(rng)}), Mat(dir));
    const Vec nrm = vec({-dir(1), dir(0)}).normalized();
    const double off = nrm.dot(line.base);
    // Oracle: the line meets the triangle iff its vertices are not strictly on one side.
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < 3; ++j) {
      const double s = nrm.dot(tri.pieces()[0].col(j)) - off;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    const bool meets = lo <= 0 && hi >= 0;
    EXPECT_EQ(flat_distance(tri, line) <= 1e-9, meets);
  }
}

TEST(Flat, InvariantsHold) {
  const Flat f = Flat::through(vec({1, 2, 3}), Mat(vec({1, 1, 0})));
  EXPECT_NEAR((f.basis.transpose() * f.basis - Mat::Identity(1, 1)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((f.basis.transpose() * f.base).norm(), 0.0, 1e-12);
}

TEST(Hyperplane, NormalizesAndFlips) {
  const auto h = OrientedHyperplane::make(vec({3, 4}), 10);
  EXPECT_NEAR(h.normal.norm(), 1.0, 1e-15);
  EXPECT_NEAR(h.offset, 2.0, 1e-15);
  EXPECT_NEAR(h.flipped().signed_distance(vec({0, 0})), 2.0, 1e-15);
  EXPECT_THROW(OrientedHyperplane::make(vec({0, 0}), 1), std::invalid_argument);
}

TEST(Grid, CircleHas256Nodes) {
  const auto g = make_grid(2, 1, 2 * kPi / 256, 0);
  ASSERT_EQ(g.size(), 256);
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_NEAR((g.pole(i) + g.pole(g.pair[i])).norm(), 0.0, 1e-15);
    EXPECT_NEAR(g.pole(i).norm(), 1.0, 1e-15);
  }
}

TEST(Grid, SphereCountWithinAreaBounds) {
  const double r = 0.05;
  const auto g = make_grid(3, 1, r, 0);
  EXPECT_GE(g.size(), 4 * kPi / (r * r));
  EXPECT_LE(g.size(), 16 * kPi / (r * r));
}

TEST(Grid, InvolutionAndNeighbors) {
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    const auto g = make_grid(n, k, n == 4 ? 1.2 : 0.2, 11);
    for (int i = 0; i < g.size(); ++i) {
      EXPECT_NE(g.pair[i], i);
      EXPECT_EQ(g.pair[g.pair[i]], i);
      EXPECT_FALSE(g.neighbors[i].empty());
      for (int j : g.neighbors[i]) {
        const auto& back = g.neighbors[j];
        ASSERT_TRUE(std::binary_search(back.begin(), back.end(), i));
      }
      EXPECT_NEAR((g.nodes[i].transpose() * g.nodes[i] - Mat::Identity(k, k)).norm(), 0.0, 1e-12);
    }
  }
}

TEST(Grid, RejectsUnsupported) {
  EXPECT_THROW(make_grid(3, 3, 0.1), std::invalid_argument);
  EXPECT_THROW(make_grid(2, 0, 0.1), std::invalid_argument);
  EXPECT_THROW(make_grid(2, 1, 0.0), std::invalid_argument);
}

TEST(Grid, SeedDeterminism) {
  const auto a = make_grid(4, 2, 1.2, 5);
  const auto b = make_grid(4, 2, 1.2, 5);
  ASSERT_EQ(a.size(), b.size());
  for (int i = 0; i < a.size(); ++i) EXPECT_EQ(a.nodes[i], b.nodes[i]);
}

}  // namespace
}  // namespace flatcert
