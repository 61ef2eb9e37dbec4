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

// Hyperplane alternatives: either a common transversal hyperplane exists, or
// for the requested partition a hyperplane separates the two groups. Both are
// decided from the fiber segments V_i(v) on lines through the origin.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/search.hpp"

namespace flatcert {

struct TransversalCertificate {
  Flat flat;
  std::optional<OrientedHyperplane> hyperplane;
  std::vector<double> distances;
  double residual = 0.0;
  bool nested = false;  // one fiber segment was seen inside all others
};

struct SeparationCertificate {
  OrientedHyperplane hyperplane;
  std::vector<int> i1;  // on H-
  std::vector<int> i2;  // on H+
  double gap = 0.0;     // min signed clearance of every set from the hyperplane
  std::vector<int> representatives;  // per family, when separating families
};

using AlternativeCertificate = std::variant<TransversalCertificate, SeparationCertificate>;

/// Hyperplane {x . v = t} as a flat of dimension n-1.
inline Flat hyperplane_flat(const OrientedHyperplane& h) {
  return Flat{complement_basis(h.normal), h.offset * h.normal};
}

/// Fresh distances from each set to the hyperplane.
inline TransversalCertificate certify_transversal(const std::vector<CompactSet>& sets, const OrientedHyperplane& h) {
  TransversalCertificate c;
  c.flat = hyperplane_flat(h);
  c.hyperplane = h;
  for (const auto& s : sets) c.distances.push_back(flat_distance(s, c.flat));
  c.residual = *std::max_element(c.distances.begin(), c.distances.end());
  return c;
}

/// Signed clearance: sets of i1 must lie in H-, sets of i2 in H+.
inline double separation_gap(const std::vector<CompactSet>& sets, const OrientedHyperplane& h,
                             const std::vector<int>& i1, const std::vector<int>& i2) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i : i1) gap = std::min(gap, h.offset - support(sets[i], h.normal));
  for (int i : i2) gap = std::min(gap, -support(sets[i], -h.normal) - h.offset);
  return gap;
}

using SegmentMap = std::function<std::vector<Segment>(const Vec&)>;

struct SegmentAlternative {
  int branch = 0;  // 1 transversal, 2 separation, 0 neither
  Vec v;
  double value = -std::numeric_limits<double>::infinity();
  double offset = 0.0;
  bool nested = false;
  double best_overlap = -std::numeric_limits<double>::infinity();
  double best_separation = -std::numeric_limits<double>::infinity();
};

inline double segment_overlap(const std::vector<Segment>& s, double* mid = nullptr) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& x : s) {
    lo = std::max(lo, x.lo);
    hi = std::min(hi, x.hi);
  }
  if (mid) *mid = 0.5 * (lo + hi);
  return hi - lo;
}

inline double segment_separation(const std::vector<Segment>& s, const Partition& p, double* mid = nullptr) {
  double left = -std::numeric_limits<double>::infinity();
  double right = std::numeric_limits<double>::infinity();
  for (int i : p.i1) left = std::max(left, s[i].hi);
  for (int i : p.i2) right = std::min(right, s[i].lo);
  if (mid) *mid = 0.5 * (left + right);
  return right - left;
}

// True if one segment sits inside every other one.
inline bool has_nested_segment(const std::vector<Segment>& s, double tol) {
  for (const auto& a : s) {
    if (std::all_of(s.begin(), s.end(), [&](const Segment& b) { return b.contains(a, tol); })) return true;
  }
  return false;
}

/// Sweep-and-refine decision between a common point of all fiber segments and
/// a separation of the partition. The separation branch accepts gaps down to
/// -tol, or only positive gaps when `strict_separation` is set.
inline SegmentAlternative segment_alternative(const SegmentMap& segs, const DirectionGrid& grid,
                                              const Partition& partition, double tol,
                                              bool strict_separation = false, int budget = 500) {
  SegmentAlternative out;
  auto overlap = [&](const Vec& v) { return segment_overlap(segs(v)); };
  DirectionOptimum best = sweep_max(grid, overlap, true);
  best = refine_max(best.v, best.value, overlap, grid.resolution, budget);
  out.best_overlap = best.value;
  if (best.value >= -tol) {
    const auto s = segs(best.v);
    out.branch = 1;
    out.v = best.v;
    out.value = segment_overlap(s, &out.offset);
    out.nested = has_nested_segment(s, tol);
    return out;
  }
  auto separation = [&](const Vec& v) { return segment_separation(segs(v), partition); };
  best = sweep_max(grid, separation, false);
  best = refine_max(best.v, best.value, separation, grid.resolution, budget);
  out.best_separation = best.value;
  if (best.value > 0.0 || (!strict_separation && best.value >= -tol)) {
    out.branch = 2;
    out.v = best.v;
    out.value = segment_separation(segs(best.v), partition, &out.offset);
  }
  return out;
}

inline DirectionGrid default_direction_grid(int n, std::uint64_t seed = 0) {
  return make_grid(n, 1, n == 2 ? 2.0 * kPi / 1024.0 : 0.05, seed);
}

/// Either a hyperplane meeting all n+1 sets, or one separating the groups of
/// the partition. Each set must project to a segment on every grid direction.
inline Outcome<AlternativeCertificate> hyperplane_alternative(const std::vector<CompactSet>& sets,
                                                              const Partition& partition,
                                                              const DirectionGrid& grid, double tol = kSolveTol) {
  using Out = Outcome<AlternativeCertificate>;
  const int n = sets.empty() ? 0 : sets.front().dimension();
  if (static_cast<int>(sets.size()) != n + 1) return Out::precondition("need exactly n+1 sets");
  if (grid.n != n || grid.k != 1) return Out::precondition("grid does not match the dimension");
  partition.validate(n + 1);
  for (size_t i = 0; i < sets.size(); ++i) {
    for (int g = 0; g < grid.size(); ++g) {
      if (!is_connected_projection(sets[i], grid.pole(g))) {
        std::ostringstream msg;
        msg << "set " << i + 1 << " projects to a disconnected set along direction " << grid.pole(g).transpose();
        return Out::precondition(msg.str());
      }
    }
  }
  SegmentMap segs = [&](const Vec& v) {
    std::vector<Segment> out;
    for (const auto& s : sets) out.push_back(projection_interval(s, v));
    return out;
  };
  const SegmentAlternative alt = segment_alternative(segs, grid, partition, tol);
  if (alt.branch == 1) {
    TransversalCertificate c = certify_transversal(sets, OrientedHyperplane::make(alt.v, alt.offset));
    c.nested = alt.nested;
    if (c.residual <= tol) return Out::ok(c, c.residual);
    return Out::resolution("transversal failed recheck", c.residual);
  }
  if (alt.branch == 2) {
    SeparationCertificate c{OrientedHyperplane::make(alt.v, alt.offset), partition.i1, partition.i2, 0.0, {}};
    c.gap = separation_gap(sets, c.hyperplane, c.i1, c.i2);
    if (c.gap >= -tol) return Out::ok(c, std::max(0.0, -c.gap));
    return Out::resolution("separation failed recheck", -c.gap);
  }
  return Out::resolution("neither branch reached the tolerance; best overlap " + std::to_string(alt.best_overlap) +
                             ", best separation " + std::to_string(alt.best_separation),
                         std::min(-alt.best_overlap, -alt.best_separation));
}

/// Families version: V_i(v) is the intersection of the member projections.
/// In the separation branch each family contributes the member attaining the
/// relevant endpoint as its representative.
inline Outcome<AlternativeCertificate> pairwise_families_alternative(
    const std::vector<std::vector<CompactSet>>& families, const Partition& partition, const DirectionGrid& grid,
    double tol = kSolveTol) {
  using Out = Outcome<AlternativeCertificate>;
  const int n = grid.n;
  if (static_cast<int>(families.size()) != n + 1) return Out::precondition("need exactly n+1 families");
  partition.validate(n + 1);
  for (size_t f = 0; f < families.size(); ++f) {
    if (families[f].empty()) return Out::precondition("family " + std::to_string(f + 1) + " is empty");
    for (size_t a = 0; a < families[f].size(); ++a) {
      if (families[f][a].pieces().size() != 1 || families[f][a].dimension() != n) {
        return Out::precondition("family " + std::to_string(f + 1) + " member " + std::to_string(a + 1) +
                                 " is not a single convex piece of the grid dimension");
      }
      for (size_t b = a + 1; b < families[f].size(); ++b) {
        if (piece_distance(families[f][a].pieces()[0], families[f][b].pieces()[0]) > kGeoTol) {
          return Out::precondition("family " + std::to_string(f + 1) + ": members " + std::to_string(a + 1) +
                                   " and " + std::to_string(b + 1) + " do not intersect");
        }
      }
    }
  }
  SegmentMap segs = [&](const Vec& v) {
    std::vector<Segment> out;
    for (const auto& fam : families) {
      Segment s{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
      for (const auto& c : fam) {
        const Segment x = projection_interval(c, v);
        s.lo = std::max(s.lo, x.lo);
        s.hi = std::min(s.hi, x.hi);
      }
      out.push_back(s);
    }
    return out;
  };
  for (int g = 0; g < grid.size(); g += std::max(1, grid.size() / 64)) {
    for (const auto& s : segs(grid.pole(g))) {
      if (s.lo > s.hi + tol) return Out::resolution("empty family segment despite pairwise intersection", s.lo - s.hi);
    }
  }
  const SegmentAlternative alt = segment_alternative(segs, grid, partition, tol);
  if (alt.branch == 1) {
    const OrientedHyperplane h = OrientedHyperplane::make(alt.v, alt.offset);
    TransversalCertificate c;
    c.flat = hyperplane_flat(h);
    c.hyperplane = h;
    for (const auto& fam : families) {
      for (const auto& m : fam) c.distances.push_back(flat_distance(m, c.flat));
    }
    c.residual = *std::max_element(c.distances.begin(), c.distances.end());
    c.nested = alt.nested;
    if (c.residual <= tol) return Out::ok(c, c.residual);
    return Out::resolution("transversal failed recheck", c.residual);
  }
  if (alt.branch == 2) {
    SeparationCertificate c{OrientedHyperplane::make(alt.v, alt.offset), partition.i1, partition.i2, 0.0, {}};
    std::vector<CompactSet> reps;
    c.representatives.assign(families.size(), 0);
    for (size_t f = 0; f < families.size(); ++f) {
      const bool left = std::find(partition.i1.begin(), partition.i1.end(), static_cast<int>(f)) != partition.i1.end();
      double best = std::numeric_limits<double>::infinity();
      for (size_t m = 0; m < families[f].size(); ++m) {
        const Segment x = projection_interval(families[f][m], c.hyperplane.normal);
        const double key = left ? x.hi : -x.lo;
        if (key < best) {
          best = key;
          c.representatives[f] = static_cast<int>(m);
        }
      }
      reps.push_back(families[f][c.representatives[f]]);
    }
    c.gap = separation_gap(reps, c.hyperplane, c.i1, c.i2);
    if (c.gap >= -tol) return Out::ok(c, std::max(0.0, -c.gap));
    return Out::resolution("separation failed recheck", -c.gap);
  }
  return Out::resolution("neither branch reached the tolerance", std::min(-alt.best_overlap, -alt.best_separation));
}

}  // namespace flatcert
