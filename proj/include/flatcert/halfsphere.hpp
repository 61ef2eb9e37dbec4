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

// Half-spheres of k-subspheres meeting open cap unions. A k-half-sphere is
// given by an n x k orthonormal frame F: the subsphere is span(F) ∩ S^{n-1}
// and the half is {x : x . F_0 >= 0}. Negating F_0 gives the other half.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "flatcert/caps.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/optimize.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/search.hpp"

namespace flatcert {

struct HalfSphere {
  Mat basis;  // n x k, orthonormal; column 0 is the pole
  Vec pole() const { return basis.col(0); }
  HalfSphere opposite() const {
    HalfSphere h{basis};
    h.basis.col(0) = -h.basis.col(0);
    return h;
  }
};

struct NearestOnHalfSphere {
  double angle = 0.0;
  Vec point;
};

/// Angular distance from unit c to the half-sphere, with the nearest point.
inline NearestOnHalfSphere nearest_on_halfsphere(const Vec& c, const HalfSphere& h) {
  const Mat& f = h.basis;
  const Vec f0 = f.col(0);
  if (f.cols() == 1) return {angle_between(c, f0), f0};
  const Vec p = f * (f.transpose() * c);
  if (p.dot(f0) >= 0.0 && p.norm() > 1e-15) return {std::atan2((c - p).norm(), p.norm()), p.normalized()};
  const Mat rim = f.rightCols(f.cols() - 1);
  const Vec q = rim * (rim.transpose() * c);
  if (q.norm() <= 1e-15) return {kPi / 2.0, Vec(rim.col(0))};
  return {std::atan2((c - q).norm(), q.norm()), q.normalized()};
}

/// Angular distance from c to the whole subsphere span(F) ∩ S^{n-1}.
inline double angle_to_subsphere(const Vec& c, const Mat& f) {
  const Vec p = f * (f.transpose() * c);
  return std::atan2((c - p).norm(), p.norm());
}

/// min over caps of (angle to the half-sphere - radius); negative means the
/// half-sphere enters the open set.
inline double halfsphere_clearance(const CapUnion& v, const HalfSphere& h) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cap : v.caps()) best = std::min(best, nearest_on_halfsphere(cap.center, h).angle - cap.radius);
  return best;
}

struct HalfSphereCertificate {
  HalfSphere halfsphere;
  std::vector<Vec> witnesses;  // one point of the half-sphere inside each set
  double margin = 0.0;         // smallest depth of a witness inside its set
};

struct ComplementaryCertificate {
  HalfSphere h1;
  HalfSphere h2;
  std::vector<double> clearances;  // per set, from the half it must avoid
  double margin = 0.0;             // min clearance
};

using HalfSphereResult = std::variant<HalfSphereCertificate, ComplementaryCertificate>;

inline HalfSphereCertificate certify_halfsphere(const std::vector<CapUnion>& sets, const HalfSphere& h) {
  HalfSphereCertificate c{h, {}, std::numeric_limits<double>::infinity()};
  for (const auto& v : sets) {
    double best = std::numeric_limits<double>::infinity();
    Vec where;
    for (const auto& cap : v.caps()) {
      const auto near = nearest_on_halfsphere(cap.center, h);
      if (near.angle - cap.radius < best) {
        best = near.angle - cap.radius;
        where = near.point;
      }
    }
    // Depth recomputed from the witness point itself.
    c.witnesses.push_back(where);
    c.margin = std::min(c.margin, -v.signed_distance(where));
  }
  return c;
}

inline ComplementaryCertificate certify_complementary(const std::vector<CapUnion>& sets, const HalfSphere& h1,
                                                      const Partition& p) {
  ComplementaryCertificate c{h1, h1.opposite(), std::vector<double>(sets.size(), 0.0), std::numeric_limits<double>::infinity()};
  for (int i : p.i1) c.clearances[i] = halfsphere_clearance(sets[i], c.h1);
  for (int i : p.i2) c.clearances[i] = halfsphere_clearance(sets[i], c.h2);
  for (double x : c.clearances) c.margin = std::min(c.margin, x);
  return c;
}

namespace detail {

inline std::optional<std::string> subsphere_hypothesis(const std::vector<CapUnion>& sets, int k, double resolution,
                                                       std::uint64_t seed) {
  const int n = sets.front().ambient();
  for (const Mat& f : subspace_sample(n, k, resolution, seed)) {
    for (size_t i = 0; i < sets.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& cap : sets[i].caps()) best = std::min(best, angle_to_subsphere(cap.center, f) - cap.radius);
      if (best >= 0.0) {
        std::ostringstream msg;
        msg << "set " << i + 1 << " misses the subsphere spanned by the columns of [" << f.transpose() << "]";
        return msg.str();
      }
    }
  }
  return std::nullopt;
}

template <class F>
std::pair<Mat, double> frame_search_max(const DirectionGrid& grid, F&& f, int budget) {
  int best = -1;
  double bv = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const double v = f(grid.nodes[i]);
    if (v > bv || (v == bv && best >= 0 && lexicographically_less(grid.nodes[i], grid.nodes[best]))) {
      bv = v;
      best = i;
    }
  }
  const FrameChart chart(grid.nodes[best], true);
  auto neg = [&](const Vec& t) { return -f(chart.frame(t)); };
  const LocalResult r = nelder_mead_restarts(neg, Vec::Zero(chart.dimension()), grid.resolution, budget);
  if (-r.value > bv) return {chart.frame(r.x), -r.value};
  return {grid.nodes[best], bv};
}

inline std::optional<std::string> cap_family_error(const std::vector<CapUnion>& sets, int k, const DirectionGrid& grid,
                                                   size_t expected) {
  if (sets.size() != expected) return "wrong number of sets";
  const int n = sets.front().ambient();
  for (const auto& s : sets) {
    if (s.ambient() != n) return "sets live on spheres of different dimensions";
  }
  if (grid.n != n || grid.k != k) return "grid does not match (n, k)";
  return std::nullopt;
}

}  // namespace detail

struct HalfSphereOptions {
  double tol = kSolveTol;
  double hypothesis_resolution = 0.0;  // 0: the grid resolution
  int budget = 500;
};

/// A k-half-sphere meeting all n open sets V_1..V_n of S^{n-1}, each of which
/// must meet every k-subsphere (checked on a subspace sample).
inline Outcome<HalfSphereCertificate> halfsphere_piercing(const std::vector<CapUnion>& sets, int k,
                                                          const DirectionGrid& grid, const HalfSphereOptions& opt = {}) {
  using Out = Outcome<HalfSphereCertificate>;
  const size_t n = sets.empty() ? 0 : static_cast<size_t>(sets.front().ambient());
  if (auto err = detail::cap_family_error(sets, k, grid, n)) return Out::precondition(*err);
  const double res = opt.hypothesis_resolution > 0 ? opt.hypothesis_resolution : grid.resolution;
  if (auto err = detail::subsphere_hypothesis(sets, k, res, grid.seed)) return Out::precondition(*err);
  auto depth = [&](const Mat& f) {
    const HalfSphere h{f};
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& v : sets) worst = std::max(worst, halfsphere_clearance(v, h));
    return -worst;
  };
  const auto [frame, value] = detail::frame_search_max(grid, depth, opt.budget);
  const HalfSphereCertificate c = certify_halfsphere(sets, HalfSphere{frame});
  if (c.margin >= opt.tol) return Out::ok(c, 0.0);
  return Out::resolution("no half-sphere found inside all sets with margin tol", std::max(0.0, opt.tol - c.margin));
}

/// Either a k-half-sphere meeting all n+1 sets, or complementary halves H1,
/// H2 of one subsphere with H1 avoiding the sets of I1 and H2 those of I2.
inline Outcome<HalfSphereResult> complementary_halfsphere_alternative(const std::vector<CapUnion>& sets, int k,
                                                                      const Partition& partition,
                                                                      const DirectionGrid& grid,
                                                                      const HalfSphereOptions& opt = {}) {
  using Out = Outcome<HalfSphereResult>;
  const size_t n = sets.empty() ? 0 : static_cast<size_t>(sets.front().ambient());
  if (auto err = detail::cap_family_error(sets, k, grid, n + 1)) return Out::precondition(*err);
  partition.validate(static_cast<int>(n + 1));
  const double res = opt.hypothesis_resolution > 0 ? opt.hypothesis_resolution : grid.resolution;
  if (auto err = detail::subsphere_hypothesis(sets, k, res, grid.seed)) return Out::precondition(*err);
  auto depth = [&](const Mat& f) {
    const HalfSphere h{f};
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& v : sets) worst = std::max(worst, halfsphere_clearance(v, h));
    return -worst;
  };
  const auto [frame, value] = detail::frame_search_max(grid, depth, opt.budget);
  const HalfSphereCertificate first = certify_halfsphere(sets, HalfSphere{frame});
  if (first.margin >= opt.tol) return Out::ok(first, 0.0);
  auto avoid = [&](const Mat& f) { return certify_complementary(sets, HalfSphere{f}, partition).margin; };
  const auto [frame2, value2] = detail::frame_search_max(grid, avoid, opt.budget);
  const ComplementaryCertificate second = certify_complementary(sets, HalfSphere{frame2}, partition);
  if (second.margin >= -opt.tol) return Out::ok(second, std::max(0.0, -second.margin));
  return Out::resolution("neither branch certified", std::min(opt.tol - first.margin, -second.margin));
}

}  // namespace flatcert
