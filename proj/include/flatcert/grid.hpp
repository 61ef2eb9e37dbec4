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

// Antipodally symmetric samples of spheres and of oriented frame spaces, plus
// local charts used by the refinement stage of every solver.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "flatcert/geometry.hpp"

namespace flatcert {

/// Discretized configuration space. Each node is an n x k orthonormal frame;
/// for k = 1 the frame is a unit vector of S^{n-1}. The first column is the
/// pole; the involution negates it.
struct DirectionGrid {
  int n = 0;
  int k = 0;
  std::vector<Mat> nodes;
  std::vector<int> pair;                    // involution: index of the antipodal node
  std::vector<std::vector<int>> neighbors;  // symmetric adjacency
  double resolution = 0.0;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  Vec pole(int i) const { return nodes[i].col(0); }

  /// One node out of every antipodal pair (the lower index).
  std::vector<int> representatives() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (i < pair[i]) out.push_back(i);
    }
    return out;
  }
};

namespace detail {

inline double frame_distance(const Mat& a, const Mat& b) {
  const double chord = (a.col(0) - b.col(0)).norm();
  if (a.cols() == 1) return chord;
  // |P_a - P_b|_F^2 = 2k - 2 |a^T b|_F^2 for orthonormal frames.
  const double gap = static_cast<double>(a.cols()) - (a.transpose() * b).squaredNorm();
  const double proj = std::sqrt(std::max(0.0, gap));
  return std::max(chord, proj);
}

inline void build_neighbors(DirectionGrid& g) {
  const double radius = 2.5 * g.resolution;
  const int count = g.size();
  g.neighbors.assign(count, {});
  if (g.n <= 3) {
    std::map<std::tuple<int, int, int>, std::vector<int>> buckets;
    auto key = [&](const Vec& p) {
      int c[3] = {0, 0, 0};
      for (int d = 0; d < g.n; ++d) c[d] = static_cast<int>(std::floor(p(d) / radius));
      return std::make_tuple(c[0], c[1], c[2]);
    };
    for (int i = 0; i < count; ++i) buckets[key(g.pole(i))].push_back(i);
    for (int i = 0; i < count; ++i) {
      auto [cx, cy, cz] = key(g.pole(i));
      const int ry = g.n >= 2 ? 1 : 0;
      const int rz = g.n >= 3 ? 1 : 0;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -ry; dy <= ry; ++dy) {
          for (int dz = -rz; dz <= rz; ++dz) {
            auto it = buckets.find({cx + dx, cy + dy, cz + dz});
            if (it == buckets.end()) continue;
            for (int j : it->second) {
              if (j == i || (g.nodes[i].col(0) - g.nodes[j].col(0)).squaredNorm() > radius * radius) continue;
              if (frame_distance(g.nodes[i], g.nodes[j]) <= radius) g.neighbors[i].push_back(j);
            }
          }
        }
      }
      std::sort(g.neighbors[i].begin(), g.neighbors[i].end());
    }
  } else {
    for (int i = 0; i < count; ++i) {
      for (int j = i + 1; j < count; ++j) {
        if ((g.nodes[i].col(0) - g.nodes[j].col(0)).norm() > radius) continue;
        if (frame_distance(g.nodes[i], g.nodes[j]) <= radius) {
          g.neighbors[i].push_back(j);
          g.neighbors[j].push_back(i);
        }
      }
    }
  }
  // Isolated nodes (possible on sparse random samples) get their nearest node.
  for (int i = 0; i < count; ++i) {
    if (!g.neighbors[i].empty() || count < 2) continue;
    int best = -1;
    double bd = 1e300;
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const double d = frame_distance(g.nodes[i], g.nodes[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    g.neighbors[i].push_back(best);
    g.neighbors[best].push_back(i);
    std::sort(g.neighbors[best].begin(), g.neighbors[best].end());
  }
}

inline int count_for(double resolution, double dim, double area) {
  const double c = std::ceil(area / std::pow(resolution, dim) - 1e-9);
  if (c > 400000) throw std::invalid_argument("make_grid: resolution too fine for this (n, k)");
  return std::max(2, static_cast<int>(c));
}

// Upper-hemisphere spiral sample of S^2 (z > 0); antipodes complete it.
inline std::vector<Vec> hemisphere_spiral(int half) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec> out;
  out.reserve(half);
  for (int i = 0; i < half; ++i) {
    const double z = (i + 0.5) / half;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.push_back(vec({r * std::cos(phi), r * std::sin(phi), z}));
  }
  return out;
}

}  // namespace detail

/// Quasi-uniform antipodally symmetric sample of S(gamma_n^k).
inline DirectionGrid make_grid(int n, int k, double resolution, std::uint64_t seed = 0) {
  if (n < 2 || n > kMaxDimension || k < 1 || k >= n) {
    throw std::invalid_argument("make_grid: unsupported (n, k) = (" + std::to_string(n) + ", " +
                                std::to_string(k) + ")");
  }
  if (!(resolution > 0.0)) throw std::invalid_argument("make_grid: resolution must be positive");
  DirectionGrid g;
  g.n = n;
  g.k = k;
  g.resolution = resolution;
  g.seed = seed;

  std::vector<Mat> half;
  if (k == 1 && n == 2) {
    int m = static_cast<int>(std::ceil(2.0 * kPi / resolution - 1e-9));
    m += m % 2;
    m = std::max(m, 4);
    for (int j = 0; j < m / 2; ++j) {
      const double a = 2.0 * kPi * j / m;
      half.push_back(vec({std::cos(a), std::sin(a)}));
    }
  } else if (k == 1 && n == 3) {
    const int count = detail::count_for(resolution, 2.0, 4.0 * kPi);
    for (auto& p : detail::hemisphere_spiral(count)) half.push_back(p);
  } else if (k == 2 && n == 3) {
    const int poles = detail::count_for(resolution, 2.0, 4.0 * kPi);
    const int turns = std::max(2, static_cast<int>(std::ceil(kPi / resolution - 1e-9)));
    for (auto& p : detail::hemisphere_spiral(poles)) {
      const Mat perp = complement_basis(p);
      for (int t = 0; t < turns; ++t) {
        const double a = kPi * t / turns;
        Mat f(3, 2);
        f.col(0) = p;
        f.col(1) = std::cos(a) * perp.col(0) + std::sin(a) * perp.col(1);
        half.push_back(f);
      }
    }
  } else {
    const double dim = (n - 1) + (k - 1) * (n - k);
    const int count = detail::count_for(resolution, dim, std::pow(2.0 * kPi, dim) / 2.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < count; ++i) {
      Mat f(n, k);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) f(r, c) = normal(rng);
      }
      half.push_back(orthonormalize(f));
    }
  }

  const int h = static_cast<int>(half.size());
  g.nodes.reserve(2 * h);
  for (const auto& f : half) g.nodes.push_back(f);
  for (const auto& f : half) {
    Mat t = f;
    t.col(0) = -t.col(0);
    g.nodes.push_back(t);
  }
  g.pair.resize(2 * h);
  for (int i = 0; i < h; ++i) {
    g.pair[i] = i + h;
    g.pair[i + h] = i;
  }
  detail::build_neighbors(g);
  return g;
}

/// One orthonormal basis per sampled k-dimensional linear subspace of R^n
/// (unoriented). k = n gives the identity.
inline std::vector<Mat> subspace_sample(int n, int k, double resolution, std::uint64_t seed = 0) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("subspace_sample: need 0 <= k <= n");
  if (k == n) return {Mat::Identity(n, n)};
  if (k == 0) return {Mat(n, 0)};
  std::vector<Mat> out;
  if (k == 1 || k == n - 1) {
    const DirectionGrid g = make_grid(n, 1, resolution, seed);
    for (int i : g.representatives()) {
      const Vec v = g.pole(i);
      out.push_back(k == 1 ? Mat(v) : complement_basis(v));
    }
    return out;
  }
  const DirectionGrid g = make_grid(n, k, resolution, seed);
  for (int i : g.representatives()) out.push_back(g.nodes[i]);
  return out;
}

/// Local coordinates around a frame. Subspace mode moves only span(F);
/// pole mode also rotates the first column inside the span.
class FrameChart {
 public:
  FrameChart(Mat origin, bool pole_aware)
      : origin_(std::move(origin)), perp_(complement_basis(origin_)), pole_aware_(pole_aware) {}

  int dimension() const {
    const auto k = origin_.cols();
    const auto n = origin_.rows();
    return static_cast<int>((n - k) * k + (pole_aware_ ? k - 1 : 0));
  }

  Mat frame(const Vec& t) const {
    const auto n = origin_.rows();
    const auto k = origin_.cols();
    Mat f = origin_;
    if (n > k) {
      Eigen::Map<const Mat> a(t.data(), n - k, k);
      f += perp_ * a;
    }
    if (pole_aware_) {
      for (Eigen::Index j = 1; j < k; ++j) f.col(0) += t((n - k) * k + j - 1) * origin_.col(j);
    }
    return orthonormalize(f);
  }

  const Mat& origin() const { return origin_; }

 private:
  Mat origin_;
  Mat perp_;
  bool pole_aware_;
};

/// Lexicographic order on frames, used to break ties between equal objectives.
inline bool lexicographically_less(const Mat& a, const Mat& b) {
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (a(r, c) != b(r, c)) return a(r, c) < b(r, c);
    }
  }
  return false;
}

/// Uniformly random rotation (Haar measure) of R^n with determinant +1.
template <class Rng>
Mat random_rotation(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Mat g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = normal(rng);
  }
  Mat q = orthonormalize(g);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace flatcert
