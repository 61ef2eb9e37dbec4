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

// Covering theorems on S^n, realized on cap unions. A cover is a list of
// CapUnion sets in R^{n+1}; grids come from make_grid(n + 1, 1, res).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatcert/caps.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/optimize.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/search.hpp"

namespace flatcert {

struct CoverCheck {
  bool covered = true;
  int witness = -1;  // grid node farther than tol from every set
  Vec point;
  double worst = 0.0;  // max over nodes of the distance to the nearest set
};

inline double cover_distance(const std::vector<CapUnion>& sets, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : sets) d = std::min(d, s.distance(x));
  return d;
}

inline CoverCheck verify_covering(const std::vector<CapUnion>& sets, const DirectionGrid& grid, double tol = kGeoTol) {
  if (sets.empty()) throw std::invalid_argument("verify_covering: no sets");
  if (grid.k != 1 || grid.n != sets.front().ambient()) {
    throw std::invalid_argument("verify_covering: grid does not match the sphere");
  }
  CoverCheck out;
  for (int i = 0; i < grid.size(); ++i) {
    const double d = cover_distance(sets, grid.pole(i));
    if (d > out.worst) out.worst = d;
    if (d > tol && out.covered) {
      out.covered = false;
      out.witness = i;
      out.point = grid.pole(i);
    }
  }
  return out;
}

struct AntipodeCheck {
  bool ok = true;
  int cap_a = -1;  // x lies in cap_a and -x in cap_b
  int cap_b = -1;
  double clearance = kPi;  // dist(U, -U)
};

/// Exact: caps a and b hold x and -x iff angle(c_a, -c_b) <= r_a + r_b.
inline AntipodeCheck check_no_antipodal_pairs(const CapUnion& set) {
  AntipodeCheck out;
  const auto& caps = set.caps();
  for (size_t a = 0; a < caps.size(); ++a) {
    for (size_t b = a; b < caps.size(); ++b) {
      const double gap = angle_between(caps[a].center, -caps[b].center) - caps[a].radius - caps[b].radius;
      if (gap < out.clearance) out.clearance = gap;
      if (gap <= 0.0 && out.ok) {
        out.ok = false;
        out.cap_a = static_cast<int>(a);
        out.cap_b = static_cast<int>(b);
      }
    }
  }
  return out;
}

namespace detail {

inline std::optional<std::string> cover_error(const std::vector<CapUnion>& sets, const DirectionGrid& grid,
                                              double tol) {
  if (sets.empty()) return "empty cover";
  const int d = sets.front().ambient();
  for (const auto& s : sets) {
    if (s.ambient() != d) return "sets live on spheres of different dimensions";
  }
  if (grid.k != 1 || grid.n != d) return "grid does not match the sphere dimension";
  for (size_t i = 0; i < sets.size(); ++i) {
    const AntipodeCheck a = check_no_antipodal_pairs(sets[i]);
    if (!a.ok) {
      std::ostringstream msg;
      msg << "set " << i + 1 << " contains an antipodal pair (caps " << a.cap_a + 1 << " and " << a.cap_b + 1 << ")";
      return msg.str();
    }
  }
  const CoverCheck c = verify_covering(sets, grid, tol);
  if (!c.covered) {
    std::ostringstream msg;
    msg << "grid node " << c.witness << " is at distance " << c.worst << " from the cover";
    return msg.str();
  }
  return std::nullopt;
}

// Optimizes f over the sphere from the best grid nodes of `score` (lower is
// better), stopping once `target` is met.
template <class F>
LocalResult sphere_descent(const DirectionGrid& grid, F&& f, int starts, int budget, double target) {
  std::vector<double> values(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) values[i] = f(grid.pole(i));
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  LocalResult best;
  best.x = grid.pole(order.front());
  best.value = values[order.front()];
  for (int s = 0; s < starts && s < static_cast<int>(order.size()) && best.value > target; ++s) {
    const FrameChart chart(Mat(grid.pole(order[s])), false);
    auto g = [&](const Vec& t) { return f(Vec(chart.frame(t).col(0))); };
    const LocalResult r = nelder_mead_restarts(g, Vec::Zero(chart.dimension()), grid.resolution, budget, target);
    if (r.value < best.value) {
      best.value = r.value;
      best.x = chart.frame(r.x).col(0);
    }
  }
  return best;
}

}  // namespace detail

/// The partition of unity f_i = max(0, 1 - dist(x, U_i)/eps), normalized,
/// and the odd map g(x) = f(x) - f(-x).
class PartitionOfUnity {
 public:
  PartitionOfUnity(const std::vector<CapUnion>& sets, double eps) : sets_(&sets), eps_(eps) {}

  double eps() const { return eps_; }

  Vec weights(const Vec& x) const {
    Vec f(static_cast<Eigen::Index>(sets_->size()));
    for (size_t i = 0; i < sets_->size(); ++i) f(i) = std::max(0.0, 1.0 - (*sets_)[i].distance(x) / eps_);
    const double s = f.sum();
    return s > 0.0 ? Vec(f / s) : f;
  }

  Vec g(const Vec& x) const { return weights(x) - weights(-x); }

  Vec h(const Vec& x) const {
    const Vec v = g(x);
    const double nrm = v.norm();
    return nrm > 0.0 ? Vec(v / nrm) : v;
  }

 private:
  const std::vector<CapUnion>* sets_;
  double eps_;
};

/// The point y with y_i = |I2|/c on I1 and -|I1|/c on I2, c = sqrt(|I1||I2|N).
inline Vec partition_target(const std::vector<int>& side, int count) {
  Vec y(count);
  const int a = static_cast<int>(std::count(side.begin(), side.end(), 0));
  const int b = count - a;
  const double c = std::sqrt(static_cast<double>(a) * b * count);
  for (int i = 0; i < count; ++i) y(i) = side[i] == 0 ? b / c : -a / c;
  return y;
}

struct PartitionPoint {
  Vec x;
  std::vector<double> first_distances;   // dist(x, U_i), i in I1
  std::vector<double> second_distances;  // dist(-x, U_i), i in I2
  double residual = 0.0;
  double eps = 0.0;
  double map_error = 0.0;  // |h(x) - y| at the partition-of-unity preimage
};

inline PartitionPoint certify_partition_point(const std::vector<CapUnion>& sets, const std::vector<int>& side,
                                              const Vec& x) {
  PartitionPoint p;
  p.x = x / x.norm();
  for (size_t i = 0; i < sets.size(); ++i) {
    if (side[i] == 0) {
      p.first_distances.push_back(sets[i].distance(p.x));
      p.residual = std::max(p.residual, p.first_distances.back());
    } else {
      p.second_distances.push_back(sets[i].distance(-p.x));
      p.residual = std::max(p.residual, p.second_distances.back());
    }
  }
  return p;
}

struct CoveringOptions {
  double tol = 1e-3;
  double cover_tol = kGeoTol;
  int budget = 500;
  int starts = 8;
};

/// A point x in every U_i, i in I1, with -x in every U_i, i in I2, for a
/// cover of S^n by n+2 closed sets free of antipodal pairs. `side[i]` is 0
/// for I1 and 1 for I2.
inline Outcome<PartitionPoint> find_partition_point(const std::vector<CapUnion>& sets, const std::vector<int>& side,
                                                    const DirectionGrid& grid, const CoveringOptions& opt = {}) {
  using Out = Outcome<PartitionPoint>;
  if (auto err = detail::cover_error(sets, grid, opt.cover_tol)) return Out::precondition(*err);
  const int count = static_cast<int>(sets.size());
  if (count != sets.front().ambient() + 1) {
    return Out::precondition("need n+2 = " + std::to_string(sets.front().ambient() + 1) + " sets on S^" +
                             std::to_string(sets.front().ambient() - 1) + ", got " + std::to_string(count));
  }
  if (static_cast<int>(side.size()) != count) return Out::precondition("partition does not match the cover");
  const int first = static_cast<int>(std::count(side.begin(), side.end(), 0));
  if (first == 0 || first == count) return Out::precondition("both parts of the partition must be nonempty");

  double clearance = kPi;
  for (const auto& s : sets) clearance = std::min(clearance, check_no_antipodal_pairs(s).clearance);
  const Vec y = partition_target(side, count);
  auto membership = [&](const Vec& x) { return certify_partition_point(sets, side, x).residual; };

  // Preimage of y under h, with eps shrinking toward zero.
  double eps = 0.45 * clearance;
  LocalResult pre;
  {
    const PartitionOfUnity pu(sets, eps);
    pre = detail::sphere_descent(grid, [&](const Vec& x) { return (pu.h(x) - y).norm(); }, opt.starts, opt.budget, 1e-12);
  }
  const double map_error = pre.value;
  Vec x = pre.x;
  for (int round = 0; round < 6 && membership(x) > 0.0; ++round) {
    eps *= 0.5;
    const PartitionOfUnity pu(sets, eps);
    const FrameChart chart(Mat(x), false);
    auto f = [&](const Vec& t) { return (pu.h(Vec(chart.frame(t).col(0))) - y).norm(); };
    const LocalResult r = nelder_mead_restarts(f, Vec::Zero(chart.dimension()), eps, opt.budget, 1e-12);
    x = chart.frame(r.x).col(0);
  }
  if (membership(x) > 0.0) {
    const FrameChart chart(Mat(x), false);
    auto f = [&](const Vec& t) { return membership(Vec(chart.frame(t).col(0))); };
    const LocalResult r = nelder_mead_restarts(f, Vec::Zero(chart.dimension()), grid.resolution, opt.budget, 0.0);
    if (r.value < membership(x)) x = chart.frame(r.x).col(0);
  }
  if (membership(x) > opt.tol) {
    const LocalResult r = detail::sphere_descent(grid, membership, opt.starts, opt.budget, 0.0);
    if (r.value < membership(x)) x = r.x;
  }
  PartitionPoint p = certify_partition_point(sets, side, x);
  p.eps = 0.45 * clearance;
  p.map_error = map_error;
  if (p.residual <= opt.tol) return Out::ok(p, p.residual);
  Out o = Out::resolution("membership residual stayed above tolerance", p.residual);
  o.value = p;
  return o;
}

struct IncidencePoint {
  Vec x;
  std::vector<int> sets;          // indices within tol of x (or of -x)
  std::vector<double> distances;  // per set, the distance used for the count
  int count = 0;
};

namespace detail {

// The distance of set i used by an incidence count, and the k-th smallest of
// them (a continuous surrogate for "at least k incidences").
template <class D>
IncidencePoint incidences(const Vec& x, int count, double tol, D&& dist) {
  IncidencePoint p;
  p.x = x;
  for (int i = 0; i < count; ++i) {
    p.distances.push_back(dist(i, x));
    if (p.distances.back() <= tol) p.sets.push_back(i);
  }
  p.count = static_cast<int>(p.sets.size());
  return p;
}

template <class D>
IncidencePoint max_incidence(const DirectionGrid& grid, int count, int need, double tol, const CoveringOptions& opt,
                             D&& dist) {
  auto kth = [&](const Vec& x) {
    std::vector<double> d;
    for (int i = 0; i < count; ++i) d.push_back(dist(i, x));
    std::nth_element(d.begin(), d.begin() + (need - 1), d.end());
    return d[need - 1];
  };
  const LocalResult r = sphere_descent(grid, kth, opt.starts, opt.budget, 0.0);
  IncidencePoint best = incidences(r.x, count, tol, dist);
  for (int i = 0; i < grid.size(); ++i) {
    if (best.count >= need) break;
    IncidencePoint p = incidences(grid.pole(i), count, tol, dist);
    if (p.count > best.count) best = std::move(p);
  }
  return best;
}

}  // namespace detail

/// A point x such that at least n+2 sets of a cover of S^n contain x or -x.
inline Outcome<IncidencePoint> find_deep_point(const std::vector<CapUnion>& sets, const DirectionGrid& grid,
                                               const CoveringOptions& opt = {}) {
  using Out = Outcome<IncidencePoint>;
  if (auto err = detail::cover_error(sets, grid, opt.cover_tol)) return Out::precondition(*err);
  const int need = sets.front().ambient() + 1;
  if (static_cast<int>(sets.size()) < need) {
    return Out::precondition("a cover of S^n by sets free of antipodal pairs needs at least n+2 sets");
  }
  auto dist = [&](int i, const Vec& x) { return std::min(sets[i].distance(x), sets[i].distance(-x)); };
  IncidencePoint p = detail::max_incidence(grid, static_cast<int>(sets.size()), need, opt.tol, opt, dist);
  std::vector<double> used = p.distances;
  std::sort(used.begin(), used.end());
  const double residual = used[need - 1];
  if (p.count >= need) return Out::ok(p, residual);
  Out o = Out::resolution("found only " + std::to_string(p.count) + " incidences", residual);
  o.value = p;
  return o;
}

/// An antipodally symmetric cap union with a two-coloring of its caps: the
/// caps of color 0 and of color 1 are swapped by x -> -x and never meet.
struct InvariantSet {
  CapUnion set;
  std::vector<int> color;
};

/// Empty when the coloring witnesses inessentiality; otherwise the reason.
inline std::optional<std::string> coloring_error(const InvariantSet& s, double tol = kGeoTol) {
  const auto& caps = s.set.caps();
  if (s.color.size() != caps.size()) return "one color per cap is required";
  for (size_t a = 0; a < caps.size(); ++a) {
    if (s.color[a] != 0 && s.color[a] != 1) return "colors must be 0 or 1";
    bool mirrored = false;
    for (size_t b = 0; b < caps.size() && !mirrored; ++b) {
      mirrored = s.color[b] != s.color[a] && (caps[a].center + caps[b].center).norm() <= tol &&
                 std::abs(caps[a].radius - caps[b].radius) <= tol;
    }
    if (!mirrored) return "cap " + std::to_string(a + 1) + " has no antipodal cap of the other color";
    for (size_t b = 0; b < caps.size(); ++b) {
      if (s.color[b] != s.color[a] &&
          angle_between(caps[a].center, caps[b].center) <= caps[a].radius + caps[b].radius) {
        return "caps " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " of different colors meet";
      }
    }
  }
  return std::nullopt;
}

/// For a cover of S^n by N inessential invariant closed sets: N >= n+1 and
/// some n+1 of them share a point.
inline Outcome<IncidencePoint> find_ls_intersection(const std::vector<InvariantSet>& sets, const DirectionGrid& grid,
                                                    const CoveringOptions& opt = {}) {
  using Out = Outcome<IncidencePoint>;
  if (sets.empty()) return Out::precondition("empty cover");
  const int ambient = sets.front().set.ambient();
  const int need = ambient;
  if (grid.k != 1 || grid.n != ambient) return Out::precondition("grid does not match the sphere dimension");
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].set.ambient() != ambient) return Out::precondition("sets live on spheres of different dimensions");
    if (auto err = coloring_error(sets[i])) return Out::precondition("set " + std::to_string(i + 1) + ": " + *err);
  }
  if (static_cast<int>(sets.size()) < need) {
    return Out::precondition("a cover of S^" + std::to_string(ambient - 1) + " by inessential invariant sets has at least " +
                             std::to_string(need) + " members, got " + std::to_string(sets.size()));
  }
  std::vector<CapUnion> plain;
  for (const auto& s : sets) plain.push_back(s.set);
  const CoverCheck c = verify_covering(plain, grid, opt.cover_tol);
  if (!c.covered) return Out::precondition("grid node " + std::to_string(c.witness) + " is not covered");
  auto dist = [&](int i, const Vec& x) { return plain[i].distance(x); };
  IncidencePoint p = detail::max_incidence(grid, static_cast<int>(sets.size()), need, opt.tol, opt, dist);
  std::vector<double> used = p.distances;
  std::sort(used.begin(), used.end());
  const double residual = used[need - 1];
  if (p.count >= need) return Out::ok(p, residual);
  Out o = Out::resolution("found only " + std::to_string(p.count) + " sets through one point", residual);
  o.value = p;
  return o;
}

}  // namespace flatcert
