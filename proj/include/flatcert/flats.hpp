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

// k-flat solvers: equidistant flats, common transversals and flats with equal
// deviations. A flat is searched as (direction subspace L, base x in L^perp):
// a sweep over sampled subspaces with an inner search over x, followed by a
// joint Gauss-Newton / Nelder-Mead refinement of the best candidates.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/optimize.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/predicates.hpp"

namespace flatcert {

struct FlatCertificate {
  Flat flat;
  std::vector<double> values;  // per-set distances or deviations, recomputed
  double common = 0.0;         // mean of the values
  double spread = 0.0;         // max - min
  double residual = 0.0;       // max of the values (transversal residual)
};

struct FlatSearchOptions {
  double tol = kSolveTol;
  double resolution = 0.0;  // subspace sampling; 0 picks a default per (n, k)
  std::uint64_t seed = 0;
  int inner_budget = 80;
  int refine_budget = 500;
  int candidates = 4;
  bool check_preconditions = true;
};

enum class FlatMetric { kDistance, kDeviation };

namespace detail {

class FlatProblem {
 public:
  FlatProblem(const std::vector<CompactSet>& sets, int k, const Norm& norm, FlatMetric metric)
      : sets_(sets), k_(k), norm_(norm), metric_(metric) {
    n_ = sets.front().dimension();
    double r = 0.0;
    Vec centroid = Vec::Zero(n_);
    for (const auto& s : sets) {
      const Mat v = s.vertices();
      r = std::max(r, v.colwise().norm().maxCoeff());
      centroid += v.rowwise().mean();
    }
    radius_ = std::max(2.0 * r, 1e-12);
    centroid_ = centroid / static_cast<double>(sets.size());
  }

  int n() const { return n_; }
  int k() const { return k_; }
  double radius() const { return radius_; }
  const Vec& centroid() const { return centroid_; }

  /// Per-set values for the flat with direction basis f and base x (x in span(f)^perp).
  Vec values(const Mat& f, const Vec& x) const {
    const Mat p = Mat::Identity(n_, n_) - f * f.transpose();
    Vec out(static_cast<Eigen::Index>(sets_.size()));
    const bool one_dim = n_ - k_ == 1;
    const Vec normal = one_dim ? Vec(complement_basis(f).col(0)) : Vec();
    for (size_t i = 0; i < sets_.size(); ++i) {
      if (metric_ == FlatMetric::kDeviation) {
        double worst = 0.0;
        for (const auto& piece : sets_[i].pieces()) {
          const Mat r = (p * piece).colwise() - x;
          for (Eigen::Index j = 0; j < r.cols(); ++j) worst = std::max(worst, norm_(r.col(j)));
        }
        out(static_cast<Eigen::Index>(i)) = worst;
      } else if (one_dim) {
        const Segment s = projection_interval(sets_[i], normal);
        const double t = normal.dot(x);
        out(static_cast<Eigen::Index>(i)) = std::max({0.0, s.lo - t, t - s.hi});
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& piece : sets_[i].pieces()) best = std::min(best, distance_to_piece(x, p * piece, norm_));
        out(static_cast<Eigen::Index>(i)) = best;
      }
    }
    return out;
  }

 private:
  const std::vector<CompactSet>& sets_;
  int n_ = 0;
  int k_ = 0;
  Norm norm_;
  FlatMetric metric_;
  double radius_ = 1.0;
  Vec centroid_;
};

enum class FlatGoal { kEqualize, kMinimizeMax };

inline double goal_value(const Vec& v, FlatGoal goal) {
  return goal == FlatGoal::kEqualize ? v.maxCoeff() - v.minCoeff() : v.maxCoeff();
}

struct FlatCandidate {
  Mat f;
  Vec x;
  double value = std::numeric_limits<double>::infinity();
};

inline double default_flat_resolution(int n) {
  if (n == 2) return 2.0 * kPi / 256.0;
  if (n == 3) return 0.16;
  return 0.5;
}

inline FlatCandidate flat_search(const FlatProblem& prob, FlatGoal goal, const FlatSearchOptions& opt) {
  const int n = prob.n();
  const int k = prob.k();
  const double res = opt.resolution > 0 ? opt.resolution : default_flat_resolution(n);
  const auto subspaces = subspace_sample(n, k, res, opt.seed);
  const double r = prob.radius();
  auto penalized = [&](const Mat& f, const Vec& x) {
    const double over = std::max(0.0, x.norm() - r);
    return goal_value(prob.values(f, x), goal) + 10.0 * over;
  };

  std::vector<FlatCandidate> pool;
  pool.reserve(subspaces.size());
  for (const Mat& f : subspaces) {
    const Mat q = complement_basis(f);
    const Vec c0 = q.transpose() * prob.centroid();
    auto inner = [&](const Vec& c) { return penalized(f, q * c); };
    NelderMeadOptions nm;
    nm.budget = opt.inner_budget;
    nm.initial_step = 0.25 * r;
    const LocalResult lr = nelder_mead(inner, c0, nm);
    pool.push_back({f, q * lr.x, lr.value});
  }
  std::stable_sort(pool.begin(), pool.end(), [](const FlatCandidate& a, const FlatCandidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return lexicographically_less(a.f, b.f);
  });

  FlatCandidate best;
  const int count = std::min<int>(opt.candidates, static_cast<int>(pool.size()));
  for (int c = 0; c < count; ++c) {
    const FrameChart chart(pool[c].f, false);
    const int dl = chart.dimension();
    auto unpack = [&](const Vec& p, Mat& f, Vec& x) {
      f = chart.frame(p.head(dl));
      x = p.tail(n) - f * (f.transpose() * p.tail(n));
    };
    Vec p0(dl + n);
    p0.head(dl).setZero();
    p0.tail(n) = pool[c].x;
    auto objective = [&](const Vec& p) {
      Mat f;
      Vec x;
      unpack(p, f, x);
      return penalized(f, x);
    };
    Vec p = p0;
    if (goal == FlatGoal::kEqualize) {
      auto residual = [&](const Vec& q) {
        Mat f;
        Vec x;
        unpack(q, f, x);
        const Vec v = prob.values(f, x);
        return Vec(v.head(v.size() - 1).array() - v(v.size() - 1));
      };
      const PolishResult gn = gauss_newton(residual, p, 1e-13, 40);
      if (objective(gn.x) < objective(p)) p = gn.x;
    }
    if (objective(p) > 0.01 * opt.tol) {
      const LocalResult lr = nelder_mead_restarts(objective, p, 0.05 * r, opt.refine_budget, 0.01 * opt.tol);
      if (lr.value < objective(p)) p = lr.x;
    }
    if (goal == FlatGoal::kEqualize && objective(p) > 0.01 * opt.tol) {
      auto residual = [&](const Vec& q) {
        Mat f;
        Vec x;
        unpack(q, f, x);
        const Vec v = prob.values(f, x);
        return Vec(v.head(v.size() - 1).array() - v(v.size() - 1));
      };
      const PolishResult gn = gauss_newton(residual, p, 1e-13, 40);
      if (objective(gn.x) < objective(p)) p = gn.x;
    }
    FlatCandidate cand;
    unpack(p, cand.f, cand.x);
    cand.value = objective(p);
    if (cand.value < best.value) best = cand;
    if (best.value <= 0.01 * opt.tol) break;
  }
  return best;
}

inline FlatCertificate certify_flat(const std::vector<CompactSet>& sets, const Flat& flat, const Norm& norm,
                                    FlatMetric metric) {
  FlatCertificate c;
  c.flat = flat;
  for (const auto& s : sets) {
    c.values.push_back(metric == FlatMetric::kDistance ? flat_distance(s, flat, norm) : deviation(s, flat, norm));
  }
  const auto [mn, mx] = std::minmax_element(c.values.begin(), c.values.end());
  c.spread = *mx - *mn;
  c.residual = *mx;
  double sum = 0.0;
  for (double v : c.values) sum += v;
  c.common = sum / static_cast<double>(c.values.size());
  return c;
}

inline std::string antipodal_message(const FamilyAntipodality& fa) {
  std::ostringstream msg;
  msg << "family is not non-antipodal: set " << fa.member + 1 << " contains the antipodal pair ("
      << fa.witness->x.transpose() << ") / (" << fa.witness->y.transpose() << ") with normal ("
      << fa.witness->u.transpose() << ")";
  return msg.str();
}

inline std::optional<std::string> flat_shape_error(const std::vector<CompactSet>& sets, int k) {
  const int n = sets.empty() ? 0 : sets.front().dimension();
  if (static_cast<int>(sets.size()) != n + 1) return "need exactly n+1 sets";
  for (const auto& s : sets) {
    if (s.dimension() != n) return "sets have mixed dimensions";
  }
  if (k < 0 || k >= n) return "need 0 <= k < n";
  return std::nullopt;
}

}  // namespace detail

/// A k-flat whose distances to all n+1 sets are equal. The family must be
/// non-antipodal; that is checked exactly once in R^n, which is equivalent to
/// non-antipodality of every fiber projection.
inline Outcome<FlatCertificate> equidistant_k_flat(const std::vector<CompactSet>& sets, int k,
                                                   const Norm& norm = Norm::euclidean(),
                                                   const FlatSearchOptions& opt = {}) {
  using Out = Outcome<FlatCertificate>;
  if (auto err = detail::flat_shape_error(sets, k)) return Out::precondition(*err);
  if (opt.check_preconditions) {
    const auto fa = is_non_antipodal_family(sets);
    if (!fa.non_antipodal) return Out::precondition(detail::antipodal_message(fa));
  }
  const detail::FlatProblem prob(sets, k, norm, FlatMetric::kDistance);
  const auto best = detail::flat_search(prob, detail::FlatGoal::kEqualize, opt);
  const FlatCertificate c = detail::certify_flat(sets, Flat::through(best.x, best.f), norm, FlatMetric::kDistance);
  if (c.spread <= opt.tol) return Out::ok(c, c.spread);
  return Out::resolution("equidistance spread stayed above tolerance", c.spread);
}

/// A k-flat meeting all n+1 sets. Requires non-antipodality and an
/// (n-k)-convex union.
inline Outcome<FlatCertificate> common_k_transversal(const std::vector<CompactSet>& sets, int k,
                                                     const Norm& norm = Norm::euclidean(),
                                                     const FlatSearchOptions& opt = {}) {
  using Out = Outcome<FlatCertificate>;
  if (auto err = detail::flat_shape_error(sets, k)) return Out::precondition(*err);
  const int n = sets.front().dimension();
  if (opt.check_preconditions) {
    const auto fa = is_non_antipodal_family(sets);
    if (!fa.non_antipodal) return Out::precondition(detail::antipodal_message(fa));
    const int l = n - k;
    const double res = n == 2 ? 2.0 * kPi / 512.0 : 0.35;
    const auto conv = is_l_convex(union_of(sets), l, subspace_sample(n, l, res, opt.seed));
    if (!conv.convex) {
      std::ostringstream msg;
      msg << "union is not " << l << "-convex: projection to the subspace spanned by ("
          << conv.subspace.transpose() << ") misses (" << conv.uncovered.transpose() << ")";
      return Out::precondition(msg.str());
    }
  }
  FlatSearchOptions inner = opt;
  inner.check_preconditions = false;
  const detail::FlatProblem prob(sets, k, norm, FlatMetric::kDistance);
  const auto eq = detail::flat_search(prob, detail::FlatGoal::kEqualize, inner);
  FlatCertificate c = detail::certify_flat(sets, Flat::through(eq.x, eq.f), norm, FlatMetric::kDistance);
  if (c.residual <= opt.tol) return Out::ok(c, c.residual);
  const auto mx = detail::flat_search(prob, detail::FlatGoal::kMinimizeMax, inner);
  const FlatCertificate d = detail::certify_flat(sets, Flat::through(mx.x, mx.f), norm, FlatMetric::kDistance);
  if (d.residual <= opt.tol) return Out::ok(d, d.residual);
  std::ostringstream msg;
  msg << "equal distances reached spread " << c.spread << " but the common distance stays at "
      << std::min(c.residual, d.residual) << "; the convexity hypothesis may fail between grid samples";
  return Out::resolution(msg.str(), std::min(c.residual, d.residual));
}

/// A k-flat from which all n+1 sets have the same deviation.
inline Outcome<FlatCertificate> equal_deviation_k_flat(const std::vector<CompactSet>& sets, int k,
                                                       const Norm& norm = Norm::euclidean(),
                                                       const FlatSearchOptions& opt = {}) {
  using Out = Outcome<FlatCertificate>;
  if (auto err = detail::flat_shape_error(sets, k)) return Out::precondition(*err);
  if (opt.check_preconditions) {
    const auto fa = is_non_antipodal_family(sets);
    if (!fa.non_antipodal) return Out::precondition(detail::antipodal_message(fa));
  }
  const detail::FlatProblem prob(sets, k, norm, FlatMetric::kDeviation);
  const auto best = detail::flat_search(prob, detail::FlatGoal::kEqualize, opt);
  const FlatCertificate c = detail::certify_flat(sets, Flat::through(best.x, best.f), norm, FlatMetric::kDeviation);
  if (c.spread <= opt.tol) return Out::ok(c, c.spread);
  return Out::resolution("deviation spread stayed above tolerance", c.spread);
}

}  // namespace flatcert
