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

#include "flatcert/generate.hpp"
#include "flatcert/measure.hpp"
#include "flatcert/measure_partition.hpp"
#include "flatcert/oracles.hpp"

namespace flatcert {
namespace {

MeasureWithDeviation two_atoms(double eps = 0.0) {
  Mat p(2, 2);
  p << 0, 1, 0, 0;
  return MeasureWithDeviation::uniform(p, eps);
}

MeasureWithDeviation segment_atoms(int count, double eps = 0.0) {
  Mat p = Mat::Zero(2, count);
  for (int j = 0; j < count; ++j) p(0, j) = j;
  return MeasureWithDeviation::uniform(p, eps);
}

TEST(Mass, MidpointConvention) {
  EXPECT_DOUBLE_EQ(half_space_mass(two_atoms(), {vec({1, 0}), 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(half_space_mass(two_atoms(), {vec({1, 0}), 0.0}), 0.25);
  EXPECT_DOUBLE_EQ(half_space_mass(two_atoms(), {vec({1, 0}), -3.0}), 0.0);
  EXPECT_NEAR(half_space_mass(segment_atoms(100), {vec({1, 0}), 29.5}), 0.30, 0.01);
}

TEST(Mass, AntipodalConsistencyAndMonotone) {
  gen::Rng rng(3);
  const auto mu = gen::cloud(rng, vec({1, 2}), 1.5, 60, 0.1);
  for (int t = 0; t < 200; ++t) {
    const Vec v = gen::random_unit(rng, 2);
    const double off = gen::uniform(rng, -4, 6);
    EXPECT_NEAR(half_space_mass(mu, {v, off}) + half_space_mass(mu, {-v, -off}), 1.0, 1e-12);
    EXPECT_LE(half_space_mass(mu, {v, off}), half_space_mass(mu, {v, off + 0.01}));
    EXPECT_NEAR(half_space_mass(mu, {v, off}), oracle::naive_cdf(mu, v, off), 1e-12);
  }
}

TEST(Quantile, ValuesAndRoundTrip) {
  EXPECT_DOUBLE_EQ(quantile(two_atoms(), vec({1, 0}), 0.5), 0.5);
  EXPECT_DOUBLE_EQ(quantile(two_atoms(), vec({1, 0}), 0.25), 0.0);
  EXPECT_THROW(quantile(two_atoms(), vec({1, 0}), 0.1), std::invalid_argument);
  gen::Rng rng(9);
  const auto mu = gen::cloud(rng, vec({0, 0}), 1.0, 50, 0.0);
  for (int t = 0; t < 100; ++t) {
    const Vec v = gen::random_unit(rng, 2);
    const double a = gen::uniform(rng, 0.02, 0.98);
    EXPECT_NEAR(half_space_mass(mu, {v, quantile(mu, v, a)}), a, 1e-12);
  }
}

TEST(Reliable, Examples) {
  const auto mu = segment_atoms(10);
  EXPECT_TRUE(reliably_intersects({vec({1, 0}), 0.0}, mu));
  EXPECT_TRUE(reliably_intersects({vec({1, 0}), 9.0}, mu));
  EXPECT_FALSE(reliably_intersects({vec({1, 0}), 20.0}, mu.with_eps(0.2)));
  const auto m2 = mu.with_eps(0.2);
  EXPECT_TRUE(reliably_intersects({vec({1, 0}), quantile(m2, vec({1, 0}), 0.2)}, m2));
  gen::Rng rng(1);
  const auto c = gen::cloud(rng, vec({0, 0}), 1.0, 40, 0.15);
  for (int t = 0; t < 200; ++t) {
    const Vec v = gen::random_unit(rng, 2);
    const double off = gen::uniform(rng, -3, 3);
    const Segment s = reliable_offsets(c, v);
    EXPECT_EQ(reliably_intersects({v, off}, c), s.contains(off)) << off << " " << s.lo << " " << s.hi;
  }
}

TEST(AlmostContains, Strictness) {
  const auto mu = segment_atoms(10, 0.1);
  EXPECT_TRUE(almost_contains_negative({vec({1, 0}), 100.0}, mu));
  const double t = quantile(mu, vec({1, 0}), 0.9);
  EXPECT_FALSE(almost_contains_negative({vec({1, 0}), t}, mu));
  EXPECT_TRUE(almost_contains_negative({vec({1, 0}), t + 1e-9}, mu));
}

TEST(AlmostSeparates, FarClouds) {
  gen::Rng rng(2);
  const auto a = gen::cloud(rng, vec({-10, 0}), 1.0, 50, 0.1);
  const auto b = gen::cloud(rng, vec({10, 0}), 1.0, 50, 0.1);
  EXPECT_TRUE(almost_separates({vec({1, 0}), 0.0}, {a}, {b}));
  EXPECT_FALSE(almost_separates({vec({1, 0}), 0.0}, {b}, {a}));
}

std::vector<MeasureWithDeviation> triangle_clouds(double eps) {
  gen::Rng rng(6);
  std::vector<MeasureWithDeviation> out;
  for (int i = 0; i < 3; ++i) {
    const double a = kPi / 2 + 2 * kPi * i / 3;
    out.push_back(gen::cloud(rng, 10 * vec({std::cos(a), std::sin(a)}), 0.5, 40, eps));
  }
  return out;
}

TEST(MeasureAlternative, CommonMedianFirstBranch) {
  gen::Rng rng(4);
  std::vector<MeasureWithDeviation> ms;
  for (int i = 0; i < 3; ++i) ms.push_back(gen::cloud(rng, vec({5.0 * i, 0}), 1.0, 40, 0.2));
  const auto out = measure_alternative(ms, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  const auto* c = std::get_if<MeasureCutCertificate>(&*out.value);
  ASSERT_NE(c, nullptr);
  for (const auto& m : ms) EXPECT_TRUE(reliably_intersects(c->hyperplane, m, kSolveTol));
}

TEST(MeasureAlternative, TriangleCloudsSeparate) {
  const auto ms = triangle_clouds(0.1);
  const auto out = measure_alternative(ms, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  const auto* c = std::get_if<AlmostSeparationCertificate>(&*out.value);
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(almost_separates(c->hyperplane, {ms[0]}, {ms[1], ms[2]}));
  const auto sep = oracle::separation_sweep(oracle::measure_segments(ms), {0}, {1, 2}, 2, 4096);
  EXPECT_GT(sep.best, 0);
}

TEST(MeasureAlternative, ZeroDeviationUsesHulls) {
  gen::Rng rng(4);
  std::vector<MeasureWithDeviation> ms;
  for (int i = 0; i < 3; ++i) ms.push_back(gen::cloud(rng, vec({5.0 * i, 0.3 * i}), 1.0, 30, 0.0));
  const auto out = measure_alternative(ms, Partition::parse("1|2,3", 3), default_direction_grid(2));
  ASSERT_TRUE(out.certified());
  EXPECT_TRUE(std::holds_alternative<MeasureCutCertificate>(*out.value));
}

TEST(Flatness, DisjointHullsAreFlat) {
  gen::Rng rng(5);
  const auto ms = gen::measure_family(rng, 2, 2, 50, true, 0.1, 0.1);
  const auto r = is_flat_family(ms, default_direction_grid(2));
  EXPECT_EQ(r.verdict, Flatness::kFlat);
  EXPECT_TRUE(r.separated_supports);
}

TEST(Flatness, IdenticalCloudsAreNotFlat) {
  gen::Rng rng(5);
  const auto mu = gen::cloud(rng, vec({0, 0}), 1.0, 80, 0.05);
  const auto grid = make_grid(2, 1, 2 * kPi / 1024);
  const auto r = is_flat_family({mu, mu}, grid);
  EXPECT_EQ(r.verdict, Flatness::kNotFlat);
  EXPECT_EQ(static_cast<int>(r.y_nodes.size()), grid.size());
  ASSERT_GE(r.loop.size(), 2u);
  EXPECT_EQ(grid.pair[r.loop.front()], r.loop.back());
  for (size_t i = 1; i < r.loop.size(); ++i) {
    const auto& nb = grid.neighbors[r.loop[i - 1]];
    EXPECT_NE(std::find(nb.begin(), nb.end(), r.loop[i]), nb.end());
  }
}

TEST(Flatness, ProperArcLifts) {
  gen::Rng rng(5);
  Mat a(2, 60), b(2, 60);
  for (int j = 0; j < 60; ++j) {
    const double ang = 2 * kPi * j / 60;
    a.col(j) = 2.0 * vec({std::cos(ang), std::sin(ang)});
    b.col(j) = a.col(j) + vec({3.0, 0.0});
  }
  const std::vector<MeasureWithDeviation> ms = {MeasureWithDeviation::uniform(a, 0.3), MeasureWithDeviation::uniform(b, 0.3)};
  const auto grid = make_grid(2, 1, 2 * kPi / 1024);
  const auto r = is_flat_family(ms, grid);
  EXPECT_FALSE(r.separated_supports);
  EXPECT_EQ(r.verdict, Flatness::kFlat) << r.note;
  EXPECT_FALSE(r.y_nodes.empty());
  EXPECT_LT(r.y_nodes.size(), static_cast<size_t>(grid.size()));
  EXPECT_EQ(2 * r.lift.size(), r.y_nodes.size());
}

TEST(Sandwich, SymmetricClouds) {
  Mat p(2, 4), q(2, 4);
  p << 1, -1, 2, -2, 1, -1, 0.5, -0.5;
  q << 0, 0, 3, -3, 2, -2, 1, -1;
  const auto out = ham_sandwich({MeasureWithDeviation::uniform(p, 0), MeasureWithDeviation::uniform(q, 0)},
                                default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->residual, 1e-12);
}

TEST(Sandwich, VerticalLine) {
  Mat p(2, 2), q(2, 2);
  p << 0, 2, 0, 0;
  q << 1, 1, -1, 1;
  const auto out = ham_sandwich({MeasureWithDeviation::uniform(p, 0), MeasureWithDeviation::uniform(q, 0)},
                                default_direction_grid(2));
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_LE(out->residual, kSolveTol);
}

TEST(Sandwich, ThreeCloudsInSpace) {
  gen::Rng rng(21);
  const auto ms = gen::measure_family(rng, 3, 3, 100, false);
  const auto out = ham_sandwich(ms, make_grid(3, 1, 0.08));
  ASSERT_TRUE(out.certified()) << out.message << " " << out.best_residual;
  for (const auto& m : ms) {
    EXPECT_NEAR(oracle::naive_cdf(m, out->hyperplane.normal, out->hyperplane.offset), 0.5, kSolveTol);
  }
}

TEST(PrescribedCut, AllPatterns) {
  gen::Rng rng(14);
  const auto ms = gen::measure_family(rng, 2, 2, 80, true, 0.1, 0.1);
  for (int pattern = 0; pattern < 4; ++pattern) {
    std::vector<double> alpha;
    for (int i = 0; i < 2; ++i) alpha.push_back(pattern >> i & 1 ? 1 - ms[i].eps() : ms[i].eps());
    const auto out = generalized_ham_sandwich(ms, alpha, default_direction_grid(2));
    ASSERT_TRUE(out.certified()) << out.message;
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(oracle::naive_cdf(ms[i], out->hyperplane.normal, out->hyperplane.offset), alpha[i], kSolveTol);
    }
  }
}

TEST(PrescribedCut, RejectsOtherFractions) {
  gen::Rng rng(14);
  const auto ms = gen::measure_family(rng, 2, 2, 80, true, 0.1, 0.1);
  const auto out = generalized_ham_sandwich(ms, {0.3, 0.9}, default_direction_grid(2));
  EXPECT_EQ(out.verdict, Verdict::kPreconditionFailed);
}

TEST(PrescribedCut, LimitMatchesBisection) {
  gen::Rng rng(15);
  auto ms = gen::measure_family(rng, 2, 2, 80, true);
  for (auto& m : ms) m = m.with_eps(0.5 - 1e-9);
  const auto g = generalized_ham_sandwich(ms, {0.5 - 1e-9, 0.5 + 1e-9}, default_direction_grid(2));
  const auto h = ham_sandwich(ms, default_direction_grid(2));
  ASSERT_TRUE(g.certified()) << g.message;
  ASSERT_TRUE(h.certified()) << h.message;
  for (const auto& m : ms) EXPECT_NEAR(half_space_mass(m, g->hyperplane), 0.5, 1e-6);
}

}  // namespace
}  // namespace flatcert
