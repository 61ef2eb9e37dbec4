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
#include <variant>

#include "flatcert/alternative.hpp"
#include "flatcert/flats.hpp"
#include "flatcert/generate.hpp"
#include "flatcert/halfsphere.hpp"
#include "flatcert/oracles.hpp"
#include "flatcert/sections.hpp"
#include "flatcert/shapes.hpp"

namespace flatcert {
namespace {

// Separation of the top disc from the other two in the side-10 triangle
// instance, 4096-direction sweep (oracle digest 2c943d3ea8a3f31a).
constexpr double kTriangleSeparation = 6.66025403784439;

std::vector<CompactSet> collinear_discs() {
  return {shapes::disc(vec({0, 0}), 1), shapes::disc(vec({5, 0}), 1), shapes::disc(vec({10, 0}), 1)};
}

std::vector<CompactSet> triangle_discs() {
  std::vector<CompactSet> out;
  for (int i = 0; i < 3; ++i) {
    const double a = kPi / 2 + 2 * kPi * i / 3;
    const double r = 10 / std::sqrt(3.0);
    out.push_back(shapes::disc(vec({r * std::cos(a), r * std::sin(a)}), 1.0));
  }
  return out;
}

TEST(HyperplaneAlternative, CollinearDiscsGiveTheAxis) {
  const auto grid = default_direction_grid(2);
  for (const auto& p : Partition::all(3)) {
    const auto out = hyperplane_alternative(collinear_discs(), p, grid);
    ASSERT_TRUE(out.certified()) << out.message;
    const auto* t = std::get_if<TransversalCertificate>(&*out.value);
    ASSERT_NE(t, nullptr);
    EXPECT_LE(t->residual, kSolveTol);
    EXPECT_NEAR(std::abs(t->hyperplane->normal(1)), 1.0, 1e-6);
  }
}

TEST(HyperplaneAlternative, TriangleDiscsSeparate) {
  const auto sets = triangle_discs();
  EXPECT_EQ(oracle::digest_of(sets), "2c943d3ea8a3f31a");
  const auto out = hyperplane_alternative(sets, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  const auto* s = std::get_if<SeparationCertificate>(&*out.value);
  ASSERT_NE(s, nullptr);
  EXPECT_GE(2 * s->gap, kTriangleSeparation - 1e-5);
  EXPECT_GE(2 * s->gap, 5 * std::sqrt(3.0) - 2 - 1e-9);
  EXPECT_NEAR(separation_gap(sets, s->hyperplane, {0}, {1, 2}), s->gap, 1e-12);
}

TEST(HyperplaneAlternative, SharedPointGivesTransversal) {
  std::vector<CompactSet> sets;
  for (int i = 0; i < 3; ++i) sets.push_back(shapes::cube(vec({0.5 * i, -0.3 * i}), 1.0));
  const auto out = hyperplane_alternative(sets, Partition::parse("2|1,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified());
  EXPECT_TRUE(std::holds_alternative<TransversalCertificate>(*out.value));
}

TEST(HyperplaneAlternative, DisconnectedProjectionRejected) {
  auto sets = triangle_discs();
  sets[0] = CompactSet({shapes::box(vec({0, 0}), vec({1, 1})), shapes::box(vec({3, 3}), vec({4, 4}))});
  const auto out = hyperplane_alternative(sets, Partition::parse("1|2,3", 3), default_direction_grid(2));
  EXPECT_EQ(out.verdict, Verdict::kPreconditionFailed);
  EXPECT_NE(out.message.find("set 1"), std::string::npos);
}

TEST(HyperplaneAlternative, RandomTriplesMatchSweepOracle) {
  gen::Rng rng(31);
  const auto grid = default_direction_grid(2);
  for (int t = 0; t < 10; ++t) {
    const auto sets = gen::convex_tuple(rng, 2, 3);
    const auto segs = oracle::set_segments(sets);
    const auto ov = oracle::overlap_sweep(segs, 2, 4096);
    for (const auto& p : Partition::all(3)) {
      const auto out = hyperplane_alternative(sets, p, grid);
      ASSERT_TRUE(out.certified()) << out.message;
      if (const auto* s = std::get_if<SeparationCertificate>(&*out.value)) {
        const auto sep = oracle::separation_sweep(segs, p.i1, p.i2, 2, 4096);
        EXPECT_LT(ov.best, 1e-5);
        EXPECT_GE(2 * s->gap, sep.best - 1e-5);
      } else {
        EXPECT_GE(ov.best, -1e-5);
      }
    }
  }
}

TEST(FamiliesAlternative, CollinearSharedPoints) {
  std::vector<std::vector<CompactSet>> fams;
  for (int i = 0; i < 3; ++i) {
    const Vec p = vec({4.0 * i, 0});
    fams.push_back({shapes::cube(p + vec({0.3, 0.2}), 0.5), shapes::cube(p - vec({0.2, 0.3}), 0.5)});
  }
  const auto out = pairwise_families_alternative(fams, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_TRUE(std::holds_alternative<TransversalCertificate>(*out.value));
}

TEST(FamiliesAlternative, FarClustersSeparateWithRepresentatives) {
  std::vector<std::vector<CompactSet>> fams;
  for (int i = 0; i < 3; ++i) {
    const double a = 2 * kPi * i / 3;
    const Vec p = 10 * vec({std::cos(a), std::sin(a)});
    fams.push_back({shapes::cube(p, 0.5), shapes::cube(p + vec({0.4, 0}), 0.5), shapes::disc(p, 0.7)});
  }
  const auto out = pairwise_families_alternative(fams, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  const auto* s = std::get_if<SeparationCertificate>(&*out.value);
  ASSERT_NE(s, nullptr);
  ASSERT_EQ(s->representatives.size(), 3u);
  EXPECT_GT(s->gap, 0);
}

TEST(FamiliesAlternative, DisjointMembersRejected) {
  std::vector<std::vector<CompactSet>> fams(3, {shapes::cube(vec({0, 0}), 1)});
  fams[1].push_back(shapes::cube(vec({5, 0}), 1));
  const auto out = pairwise_families_alternative(fams, Partition::parse("1|2,3", 3), default_direction_grid(2));
  EXPECT_EQ(out.verdict, Verdict::kPreconditionFailed);
}

std::vector<CompactSet> triangle_points(double side) {
  std::vector<CompactSet> out;
  for (int i = 0; i < 3; ++i) {
    const double a = kPi / 2 + 2 * kPi * i / 3;
    out.push_back(CompactSet::point(side / std::sqrt(3.0) * vec({std::cos(a), std::sin(a)})));
  }
  return out;
}

TEST(Equidistant, TriangleVerticesAtHalfHeight) {
  const double side = 6.0;
  const double h = side * std::sqrt(3.0) / 2;
  const auto out = equidistant_k_flat(triangle_points(side), 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->spread, kSolveTol);
  EXPECT_NEAR(out->common, h / 2, 1e-6);
}

TEST(Equidistant, TriangleDiscsOffsetByRadius) {
  const auto sets = triangle_discs();
  const double h = 10 * std::sqrt(3.0) / 2;
  const auto out = equidistant_k_flat(sets, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->spread, kSolveTol);
  EXPECT_NEAR(out->common, h / 2 - 1.0, 5e-3);
  for (size_t i = 0; i < sets.size(); ++i) EXPECT_NEAR(flat_distance(sets[i], out->flat), out->values[i], 1e-12);
}

TEST(Equidistant, TetrahedronBalls) {
  const double s = 3.0;
  std::vector<CompactSet> sets;
  for (const Vec& c : {vec({s, s, s}), vec({s, -s, -s}), vec({-s, s, -s}), vec({-s, -s, s})}) {
    sets.push_back(shapes::ball(c, 1.0));
  }
  const auto out = equidistant_k_flat(sets, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->spread, kSolveTol);
}

TEST(Equidistant, AntipodalFamilyRejected) {
  const auto out = equidistant_k_flat(collinear_discs(), 1);
  EXPECT_EQ(out.verdict, Verdict::kPreconditionFailed);
}

TEST(CommonTransversal, CollinearDiscsWithoutPreconditionCheck) {
  FlatSearchOptions opt;
  opt.check_preconditions = false;
  const auto out = common_k_transversal(collinear_discs(), 1, Norm::euclidean(), opt);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->residual, kSolveTol);
}

TEST(CommonTransversal, SmallDiscsRejectedFatDiscsSolved) {
  gen::Rng rng(4);
  const auto thin = gen::non_antipodal_triple(rng, 10.0, 0.3, 0.4);
  EXPECT_EQ(common_k_transversal(thin, 1).verdict, Verdict::kPreconditionFailed);
  const auto fat = gen::non_antipodal_triple(rng, 10.0, 5.0, 5.4);
  const auto out = common_k_transversal(fat, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->residual, kSolveTol);
  const auto lines = oracle::line_transversal(fat, 4096);
  EXPECT_TRUE(lines.feasible);
}

TEST(EqualDeviation, PointsMatchEquidistant) {
  const auto out = equal_deviation_k_flat(triangle_points(6.0), 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_NEAR(out->common, 6.0 * std::sqrt(3.0) / 4, 1e-6);
}

TEST(EqualDeviation, RandomPolygonsRecomputed) {
  gen::Rng rng(8);
  for (int t = 0; t < 3; ++t) {
    const auto sets = gen::non_antipodal_triple(rng, 8.0, 0.5, 1.5, 7);
    const auto out = equal_deviation_k_flat(sets, 1);
    ASSERT_TRUE(out.certified()) << out.message;
    double lo = 1e300, hi = -1e300;
    for (const auto& s : sets) {
      const double d = deviation(s, out->flat);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    EXPECT_LE(hi - lo, kSolveTol);
  }
}

TEST(Sections, ThreePointsTieOnAnEdge) {
  Mat pts(2, 3);
  pts << 0.0, 4.0, 1.0, 0.0, 0.5, 3.0;
  const auto out = polytope_sections_config(pts, 1, make_grid(2, 1, 2 * kPi / 256));
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_EQ(out->touching().size(), 3u);
  EXPECT_GT(out->top - out->bottom, kSolveTol);
  double best = 1.0;
  for (int i = 0; i < 3; ++i) best = std::min(best, std::abs(out->u.dot((pts.col(i) - pts.col((i + 1) % 3)).normalized())));
  EXPECT_LE(best, 1e-9);
}

TEST(Sections, RandomConfigurations) {
  gen::Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const int m = 3 + t % 3;
    Mat pts(2, m);
    for (int j = 0; j < m; ++j) pts.col(j) = vec({gen::uniform(rng, -3, 3), gen::uniform(rng, -3, 3)});
    const auto out = polytope_sections_config(pts, 1, make_grid(2, 1, 2 * kPi / 256));
    ASSERT_TRUE(out.certified()) << out.message;
    EXPECT_GE(out->touching().size(), 3u);
    EXPECT_LE(out->residual, kSolveTol);
  }
}

TEST(HalfSphere, OverlappingArcs) {
  const std::vector<CapUnion> v = {CapUnion({CapUnion::arc(-10, 190)}), CapUnion({CapUnion::arc(170, 370)})};
  const auto out = halfsphere_piercing(v, 1, make_grid(2, 1, 2 * kPi / 256));
  ASSERT_TRUE(out.certified()) << out.message;
  const Vec p = out->halfsphere.pole();
  EXPECT_NEAR(std::abs(std::atan2(p(1), p(0))), kPi, 10 * kPi / 180);
  for (size_t i = 0; i < v.size(); ++i) EXPECT_TRUE(v[i].contains(out->witnesses[i], -kSolveTol));
}

TEST(HalfSphere, ShortArcRejected) {
  const std::vector<CapUnion> v = {CapUnion({CapUnion::arc(0, 120)}), CapUnion({CapUnion::arc(170, 370)})};
  const auto out = halfsphere_piercing(v, 1, make_grid(2, 1, 2 * kPi / 256));
  EXPECT_EQ(out.verdict, Verdict::kPreconditionFailed);
}

TEST(HalfSphere, WideCapsOnTheTwoSphere) {
  const std::vector<CapUnion> v = {CapUnion({{vec({1, 0, 0}), 1.66}}), CapUnion({{vec({-0.5, 0.866025403784439, 0}), 1.66}}),
                                   CapUnion({{vec({-0.5, -0.866025403784439, 0}), 1.66}})};
  for (int k : {1, 2}) {
    const auto out = halfsphere_piercing(v, k, make_grid(3, k, k == 1 ? 0.1 : 0.4));
    ASSERT_TRUE(out.certified()) << out.message;
    for (size_t i = 0; i < v.size(); ++i) EXPECT_LE(v[i].signed_distance(out->witnesses[i]), -kSolveTol);
  }
}

TEST(HalfSphere, ComplementaryHalves) {
  const std::vector<CapUnion> v = {CapUnion({CapUnion::arc(-100, 100)}), CapUnion({CapUnion::arc(20, 220)}),
                                   CapUnion({CapUnion::arc(140, 340)})};
  const auto out = complementary_halfsphere_alternative(v, 1, Partition::parse("1|2,3", 3), make_grid(2, 1, 2 * kPi / 256));
  ASSERT_TRUE(out.certified()) << out.message;
  const auto* c = std::get_if<ComplementaryCertificate>(&*out.value);
  ASSERT_NE(c, nullptr);
  const Vec x = c->h1.pole();
  const double deg = std::atan2(x(1), x(0)) * 180 / kPi;
  EXPECT_GE(std::abs(deg), 160 - 1e-6);
  EXPECT_GE(c->margin, -kSolveTol);
}

TEST(HalfSphere, EqualSetsTakeFirstBranch) {
  const std::vector<CapUnion> v(3, CapUnion({CapUnion::arc(-100, 100)}));
  const auto out = complementary_halfsphere_alternative(v, 1, Partition::parse("1,2|3", 3), make_grid(2, 1, 2 * kPi / 256));
  ASSERT_TRUE(out.certified());
  EXPECT_TRUE(std::holds_alternative<HalfSphereCertificate>(*out.value));
}

}  // namespace
}  // namespace flatcert
