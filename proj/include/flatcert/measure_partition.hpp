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

// Hyperplane partitions of measures with deviation: the reliable-transversal
// alternative, flatness of a family, and prescribed-fraction cuts.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "flatcert/alternative.hpp"
#include "flatcert/convex.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/measure.hpp"
#include "flatcert/optimize.hpp"
#include "flatcert/oracles.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/search.hpp"

namespace flatcert {

struct MeasureCutCertificate {
  OrientedHyperplane hyperplane;
  std::vector<double> masses;  // H- mass per measure, recomputed from the atoms
  double residual = 0.0;
};

struct AlmostSeparationCertificate {
  OrientedHyperplane hyperplane;
  std::vector<int> i1;  // almost contained in H-
  std::vector<int> i2;  // almost contained in H+
  std::vector<double> masses;
  double margin = 0.0;  // smallest excess over 1 - eps of the containing side
};

using MeasureAlternative = std::variant<MeasureCutCertificate, AlmostSeparationCertificate>;

inline std::vector<double> negative_masses(const std::vector<MeasureWithDeviation>& ms, const OrientedHyperplane& h) {
  std::vector<double> out;
  for (const auto& m : ms) out.push_back(half_space_mass(m, h));
  return out;
}

namespace detail {

inline std::optional<std::string> measure_family_error(const std::vector<MeasureWithDeviation>& ms, size_t count) {
  if (ms.size() != count) return "expected " + std::to_string(count) + " measures, got " + std::to_string(ms.size());
  for (const auto& m : ms) {
    if (m.dimension() != ms.front().dimension()) return std::string("measures live in different dimensions");
  }
  return std::nullopt;
}

}  // namespace detail

/// Either a hyperplane reliably intersecting all n+1 measures, or one almost
/// separating the groups of the partition.
inline Outcome<MeasureAlternative> measure_alternative(const std::vector<MeasureWithDeviation>& ms,
                                                       const Partition& partition, const DirectionGrid& grid,
                                                       double tol = kSolveTol) {
  using Out = Outcome<MeasureAlternative>;
  const int n = ms.empty() ? 0 : ms.front().dimension();
  if (auto err = detail::measure_family_error(ms, static_cast<size_t>(n) + 1)) return Out::precondition(*err);
  if (grid.n != n || grid.k != 1) return Out::precondition("grid does not match the dimension");
  partition.validate(n + 1);
  SegmentMap segs = [&](const Vec& v) {
    std::vector<Segment> out;
    for (const auto& m : ms) out.push_back(reliable_offsets(m, v));
    return out;
  };
  const SegmentAlternative alt = segment_alternative(segs, grid, partition, tol, true);
  if (alt.branch == 1) {
    MeasureCutCertificate c{OrientedHyperplane::make(alt.v, alt.offset), {}, 0.0};
    c.masses = negative_masses(ms, c.hyperplane);
    for (size_t i = 0; i < ms.size(); ++i) {
      const double m = c.masses[i];
      c.residual = std::max(c.residual, ms[i].eps() - std::min(m, 1.0 - m));
      if (!reliably_intersects(c.hyperplane, ms[i], tol)) {
        return Out::resolution("reliable transversal failed recheck on measure " + std::to_string(i + 1),
                               std::max(c.residual, tol));
      }
    }
    return Out::ok(c, std::max(0.0, c.residual));
  }
  if (alt.branch == 2) {
    AlmostSeparationCertificate c{OrientedHyperplane::make(alt.v, alt.offset), partition.i1, partition.i2, {}, 0.0};
    c.masses = negative_masses(ms, c.hyperplane);
    c.margin = std::numeric_limits<double>::infinity();
    std::vector<MeasureWithDeviation> m1, m2;
    for (int i : c.i1) {
      c.margin = std::min(c.margin, c.masses[i] - (1.0 - ms[i].eps()));
      m1.push_back(ms[i]);
    }
    for (int i : c.i2) {
      c.margin = std::min(c.margin, (1.0 - c.masses[i]) - (1.0 - ms[i].eps()));
      m2.push_back(ms[i]);
    }
    if (almost_separates(c.hyperplane, m1, m2)) return Out::ok(c, 0.0);
    return Out::resolution("almost separation failed recheck", -c.margin);
  }
  std::ostringstream msg;
  msg << "neither branch reached; best overlap " << alt.best_overlap << ", best separation " << alt.best_separation;
  return Out::resolution(msg.str(), std::min(-alt.best_overlap, -alt.best_separation));
}

enum class Flatness { kFlat, kNotFlat, kUnknown };

inline const char* to_string(Flatness f) {
  switch (f) {
    case Flatness::kFlat:
      return "flat";
    case Flatness::kNotFlat:
      return "not-flat";
    case Flatness::kUnknown:
      return "unknown";
  }
  return "unknown";
}

struct FlatnessReport {
  Flatness verdict = Flatness::kUnknown;
  bool separated_supports = false;  // the sufficient condition held
  std::vector<int> y_nodes;         // sphere nodes where all reliable segments share a point
  std::vector<int> lift;            // one node out of each antipodal pair of y_nodes
  std::vector<int> loop;            // path from a node to its antipode inside Y
  int components = 0;
  std::string note;
};

namespace detail {

// No (n-2)-flat meets every support hull: disjoint hulls for n = 2, no line
// transversal (at the oracle's resolution) for n = 3.
inline bool supports_separated(const std::vector<MeasureWithDeviation>& ms) {
  const int n = ms.front().dimension();
  std::vector<CompactSet> hulls;
  for (const auto& m : ms) hulls.push_back(m.support_set());
  if (n == 2) return !common_point(hulls).nonempty;
  if (n == 3) return !oracle::line_transversal(hulls, 20000).feasible;
  return false;
}

}  // namespace detail

/// Samples the set Y of directions whose reliable-offset segments share a
/// point, then tries to choose one preimage per direction continuously.
/// Components of Y on the sphere are lifted independently.
inline FlatnessReport is_flat_family(const std::vector<MeasureWithDeviation>& ms, const DirectionGrid& grid,
                                     double tol = kSolveTol) {
  FlatnessReport r;
  const int n = ms.empty() ? 0 : ms.front().dimension();
  if (auto err = detail::measure_family_error(ms, static_cast<size_t>(n))) throw std::invalid_argument(*err);
  if (grid.n != n || grid.k != 1) throw std::invalid_argument("is_flat_family: grid does not match the dimension");
  r.separated_supports = detail::supports_separated(ms);

  std::vector<char> in_y(grid.size(), 0);
  for (int i = 0; i < grid.size(); ++i) {
    std::vector<Segment> s;
    for (const auto& m : ms) s.push_back(reliable_offsets(m, grid.pole(i)));
    if (segment_overlap(s) >= -tol) {
      in_y[i] = 1;
      r.y_nodes.push_back(i);
    }
  }
  std::vector<int> comp(grid.size(), -1);
  std::vector<int> parent(grid.size(), -1);
  bool ambiguous = false;
  for (int start : r.y_nodes) {
    if (comp[start] >= 0) continue;
    const int id = r.components++;
    std::vector<int> members;
    std::deque<int> queue{start};
    comp[start] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (int w : grid.neighbors[u]) {
        if (in_y[w] && comp[w] < 0) {
          comp[w] = id;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    for (int u : members) {
      const int a = grid.pair[u];
      if (comp[a] == id && r.loop.empty()) {
        // Path u -> start -> a through the BFS tree.
        std::vector<int> up;
        for (int x = u; x >= 0; x = parent[x]) up.push_back(x);
        std::vector<int> down;
        for (int x = a; x >= 0; x = parent[x]) down.push_back(x);
        while (up.size() > 1 && down.size() > 1 && up[up.size() - 2] == down[down.size() - 2]) {
          up.pop_back();
          down.pop_back();
        }
        r.loop = up;
        for (auto it = down.rbegin() + 1; it != down.rend(); ++it) r.loop.push_back(*it);
      }
      for (int w : grid.neighbors[a]) ambiguous = ambiguous || comp[w] == id;
    }
  }
  if (r.loop.empty()) {
    // Keep the component of each antipodal pair holding the smaller node.
    std::vector<int> first_node(r.components, grid.size());
    for (int u : r.y_nodes) first_node[comp[u]] = std::min(first_node[comp[u]], u);
    for (int u : r.y_nodes) {
      const int mine = first_node[comp[u]];
      const int theirs = first_node[comp[grid.pair[u]]];
      if (mine < theirs) r.lift.push_back(u);
    }
  }
  if (r.separated_supports) {
    r.verdict = Flatness::kFlat;
    r.note = "supports are separated";
  } else if (!r.loop.empty()) {
    r.verdict = Flatness::kNotFlat;
    r.note = "a component of Y contains an antipodal pair";
  } else if (ambiguous) {
    r.verdict = Flatness::kUnknown;
    r.note = "a component of Y comes within one grid step of its antipodal image";
  } else {
    r.verdict = Flatness::kFlat;
    r.note = "each of the " + std::to_string(r.components) + " components of Y is lifted separately";
  }
  return r;
}

struct SandwichOptions {
  double tol = kSolveTol;
  int budget = 500;
  bool check_flatness = true;
};

namespace detail {

// For fixed v, the offset t minimizing max_i |F_i(t) - alpha_i|. Each F_i is
// nondecreasing, so the balance max + min of (F_i - alpha_i) is too.
struct OffsetFit {
  double t = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

inline OffsetFit best_offset(const std::vector<MeasureWithDeviation>& ms, const std::vector<double>& alpha,
                             const Vec& v) {
  std::vector<DirectionalCDF> cdfs;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& m : ms) {
    cdfs.emplace_back(m, v);
    lo = std::min(lo, cdfs.back().first());
    hi = std::max(hi, cdfs.back().last());
  }
  auto dev = [&](double t, double* worst) {
    double mx = -std::numeric_limits<double>::infinity();
    double mn = -mx;
    for (size_t i = 0; i < cdfs.size(); ++i) {
      const double d = cdfs[i](t) - alpha[i];
      mx = std::max(mx, d);
      mn = std::min(mn, d);
    }
    if (worst) *worst = std::max(mx, -mn);
    return mx + mn;
  };
  double a = lo - 1.0;
  double b = hi + 1.0;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    const double mid = 0.5 * (a + b);
    (dev(mid, nullptr) < 0.0 ? a : b) = mid;
  }
  OffsetFit out;
  for (double t : {a, b, 0.5 * (a + b)}) {
    double w = 0.0;
    dev(t, &w);
    if (w < out.value) out = {t, w};
  }
  return out;
}

inline MeasureCutCertificate certify_cut(const std::vector<MeasureWithDeviation>& ms, const std::vector<double>& alpha,
                                         const OrientedHyperplane& h) {
  MeasureCutCertificate c{h, negative_masses(ms, h), 0.0};
  for (size_t i = 0; i < ms.size(); ++i) c.residual = std::max(c.residual, std::abs(c.masses[i] - alpha[i]));
  return c;
}

inline MeasureCutCertificate polish_cut(const std::vector<MeasureWithDeviation>& ms, const std::vector<double>& alpha,
                                        Vec v, int rounds = 3) {
  MeasureCutCertificate best = certify_cut(ms, alpha, {v, best_offset(ms, alpha, v).t});
  for (int round = 0; round < rounds && best.residual > 1e-14; ++round) {
    const FrameChart chart(Mat(best.hyperplane.normal), false);
    const int d = chart.dimension();
    auto residual = [&](const Vec& x) {
      const Vec u = chart.frame(x.head(d)).col(0);
      Vec r(static_cast<Eigen::Index>(ms.size()));
      for (size_t i = 0; i < ms.size(); ++i) r(i) = DirectionalCDF(ms[i], u)(x(d)) - alpha[i];
      return r;
    };
    Vec x0 = Vec::Zero(d + 1);
    x0(d) = best.hyperplane.offset;
    const PolishResult pol = gauss_newton(residual, x0, 1e-14);
    const MeasureCutCertificate c = certify_cut(ms, alpha, {chart.frame(pol.x.head(d)).col(0), pol.x(d)});
    if (!(c.residual < best.residual)) break;
    best = c;
  }
  return best;
}

// Sweep, then Gauss-Newton from the best local maxima of the sweep score.
// The residual map is only piecewise smooth, so single starts can stall on
// a kink.
inline MeasureCutCertificate prescribed_cut(const std::vector<MeasureWithDeviation>& ms,
                                            const std::vector<double>& alpha, const DirectionGrid& grid,
                                            const SandwichOptions& opt) {
  auto score = [&](const Vec& v) { return -best_offset(ms, alpha, v).value; };
  std::vector<double> values(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) values[i] = score(grid.pole(i));
  std::vector<int> peaks;
  for (int i = 0; i < grid.size(); ++i) {
    bool peak = true;
    for (int j : grid.neighbors[i]) {
      if (values[j] > values[i] || (values[j] == values[i] && j < i)) peak = false;
    }
    if (peak) peaks.push_back(i);
  }
  auto higher = [&](int a, int b) { return values[a] > values[b] || (values[a] == values[b] && a < b); };
  std::sort(peaks.begin(), peaks.end(), higher);
  if (peaks.size() > 16) peaks.resize(16);
  // Starts: the peaks, then the best remaining nodes by score.
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t extra = std::min<size_t>(order.size(), 64);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(extra), order.end(), higher);
  std::vector<int> starts = peaks;
  for (size_t j = 0; j < extra; ++j) {
    if (std::find(peaks.begin(), peaks.end(), order[j]) == peaks.end()) starts.push_back(order[j]);
  }
  MeasureCutCertificate best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int i : starts) {
    const MeasureCutCertificate c = polish_cut(ms, alpha, grid.pole(i));
    if (c.residual < best.residual) best = c;
    if (best.residual <= 0.1 * opt.tol) return best;
  }
  const DirectionOptimum seed = peaks.empty() ? sweep_max(grid, score, false)
                                              : DirectionOptimum{grid.pole(peaks.front()), values[peaks.front()], peaks.front()};
  const DirectionOptimum refined = refine_max(seed.v, seed.value, score, grid.resolution, opt.budget);
  const MeasureCutCertificate c = polish_cut(ms, alpha, refined.v);
  return c.residual < best.residual ? c : best;
}

}  // namespace detail

/// A half-space H- with mu_i(H-) = alpha_i, alpha_i in {eps_i, 1 - eps_i},
/// for a flat family of n measures in R^n.
inline Outcome<MeasureCutCertificate> generalized_ham_sandwich(const std::vector<MeasureWithDeviation>& ms,
                                                                const std::vector<double>& alpha,
                                                                const DirectionGrid& grid,
                                                                const SandwichOptions& opt = {}) {
  using Out = Outcome<MeasureCutCertificate>;
  const int n = ms.empty() ? 0 : ms.front().dimension();
  if (auto err = detail::measure_family_error(ms, static_cast<size_t>(n))) return Out::precondition(*err);
  if (alpha.size() != ms.size()) return Out::precondition("need one fraction per measure");
  if (grid.n != n || grid.k != 1) return Out::precondition("grid does not match the dimension");
  for (size_t i = 0; i < ms.size(); ++i) {
    const double e = ms[i].eps();
    if (std::abs(alpha[i] - e) > 1e-12 && std::abs(alpha[i] - (1.0 - e)) > 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "fraction " << alpha[i] << " for measure " << i + 1 << " is neither eps = " << e
          << " nor 1 - eps; prescribed fractions must be eps or 1 - eps";
      return Out::precondition(msg.str());
    }
    if (!(e > 0.5 * ms[i].min_weight())) {
      return Out::precondition("deviation of measure " + std::to_string(i + 1) +
                               " must exceed half the smallest atom weight");
    }
  }
  if (opt.check_flatness) {
    const FlatnessReport fr = is_flat_family(ms, grid, opt.tol);
    if (fr.verdict != Flatness::kFlat) {
      return Out::precondition(std::string("family is not certified flat (") + to_string(fr.verdict) + "): " + fr.note);
    }
  }
  const MeasureCutCertificate c = detail::prescribed_cut(ms, alpha, grid, opt);
  if (c.residual <= opt.tol) return Out::ok(c, c.residual);
  return Out::resolution("prescribed masses not reached", c.residual);
}

/// A hyperplane bisecting each of d measures in R^d.
inline Outcome<MeasureCutCertificate> ham_sandwich(const std::vector<MeasureWithDeviation>& ms,
                                                   const DirectionGrid& grid, const SandwichOptions& opt = {}) {
  using Out = Outcome<MeasureCutCertificate>;
  const int n = ms.empty() ? 0 : ms.front().dimension();
  if (auto err = detail::measure_family_error(ms, static_cast<size_t>(n))) return Out::precondition(*err);
  if (grid.n != n || grid.k != 1) return Out::precondition("grid does not match the dimension");
  const MeasureCutCertificate c = detail::prescribed_cut(ms, std::vector<double>(ms.size(), 0.5), grid, opt);
  if (c.residual <= opt.tol) return Out::ok(c, c.residual);
  return Out::resolution("bisection residual stayed above tolerance", c.residual);
}

}  // namespace flatcert
