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

// Weighted point measures with deviation and their directional CDFs.
//
// Atoms alone would make half-space mass jump; the CDF along a direction is
// therefore interpolated: at the j-th distinct projected position it equals
// c_{j-1} + w_j / 2 (c the cumulative weight strictly to the left, w_j the
// weight at the position), it is linear between positions, 0 to the left of
// the first and 1 to the right of the last.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flatcert/geometry.hpp"

namespace flatcert {

class MeasureWithDeviation {
 public:
  MeasureWithDeviation() = default;

  /// `points` holds atoms as columns; weights are normalized if they sum to 1
  /// within 1e-9, otherwise rejected.
  MeasureWithDeviation(Mat points, Vec weights, double eps)
      : points_(std::move(points)), weights_(std::move(weights)), eps_(eps) {
    if (points_.cols() == 0) throw std::invalid_argument("measure: no atoms");
    if (weights_.size() != points_.cols()) throw std::invalid_argument("measure: weight count mismatch");
    if (!points_.allFinite() || !weights_.allFinite()) throw std::invalid_argument("measure: non-finite data");
    if ((weights_.array() <= 0.0).any()) throw std::invalid_argument("measure: weights must be positive");
    const double total = weights_.sum();
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("measure: weights must sum to 1");
    weights_ /= total;
    if (!(eps_ >= 0.0 && eps_ < 0.5)) throw std::invalid_argument("measure: deviation must lie in [0, 1/2)");
  }

  /// Equal-weight measure on the given atoms.
  static MeasureWithDeviation uniform(const Mat& points, double eps) {
    return MeasureWithDeviation(points, Vec::Constant(points.cols(), 1.0 / points.cols()), eps);
  }

  const Mat& points() const { return points_; }
  const Vec& weights() const { return weights_; }
  double eps() const { return eps_; }
  int dimension() const { return static_cast<int>(points_.rows()); }
  int size() const { return static_cast<int>(points_.cols()); }
  double min_weight() const { return weights_.minCoeff(); }

  MeasureWithDeviation with_eps(double eps) const { return MeasureWithDeviation(points_, weights_, eps); }

  MeasureWithDeviation transformed(const Mat& rotation, const Vec& shift) const {
    return MeasureWithDeviation((rotation * points_).colwise() + shift, weights_, eps_);
  }

  /// The support hull as a compact set.
  CompactSet support_set() const { return CompactSet({points_}); }

 private:
  Mat points_;
  Vec weights_;
  double eps_ = 0.0;
};

/// Piecewise-linear CDF of a measure along a unit direction.
class DirectionalCDF {
 public:
  DirectionalCDF(const MeasureWithDeviation& mu, const Vec& direction) : direction_(direction) {
    const Eigen::RowVectorXd proj = direction.transpose() * mu.points();
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(mu.size());
    for (int j = 0; j < mu.size(); ++j) atoms.emplace_back(proj(j), mu.weights()(j));
    std::sort(atoms.begin(), atoms.end());
    double cum = 0.0;
    for (size_t j = 0; j < atoms.size();) {
      const double pos = atoms[j].first;
      double w = 0.0;
      while (j < atoms.size() && atoms[j].first == pos) w += atoms[j++].second;
      breakpoints_.push_back(pos);
      values_.push_back(cum + 0.5 * w);
      cum += w;
    }
  }

  const Vec& direction() const { return direction_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double first() const { return breakpoints_.front(); }
  double last() const { return breakpoints_.back(); }

  double operator()(double t) const {
    if (t < breakpoints_.front()) return 0.0;
    if (t > breakpoints_.back()) return 1.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it == breakpoints_.end()) return values_.back();
    const size_t j = static_cast<size_t>(it - breakpoints_.begin());
    const double a = breakpoints_[j - 1];
    const double b = breakpoints_[j];
    const double s = (t - a) / (b - a);
    return values_[j - 1] + s * (values_[j] - values_[j - 1]);
  }

  /// Admissible quantile levels: [CDF(first), CDF(last)].
  std::pair<double, double> band() const { return {values_.front(), values_.back()}; }

  double quantile(double alpha) const {
    const auto [lo, hi] = band();
    if (!(alpha >= lo && alpha <= hi)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quantile: level " << alpha << " outside admissible band [" << lo << ", " << hi << "]";
      throw std::invalid_argument(msg.str());
    }
    auto it = std::lower_bound(values_.begin(), values_.end(), alpha);
    const size_t j = static_cast<size_t>(it - values_.begin());
    if (values_[j] == alpha || j == 0) return breakpoints_[j];
    const double s = (alpha - values_[j - 1]) / (values_[j] - values_[j - 1]);
    return breakpoints_[j - 1] + s * (breakpoints_[j] - breakpoints_[j - 1]);
  }

 private:
  Vec direction_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Mass of the negative side {x . normal <= offset}.
inline double half_space_mass(const MeasureWithDeviation& mu, const OrientedHyperplane& h) {
  if (h.normal.size() != mu.dimension()) throw std::invalid_argument("half_space_mass: dimension mismatch");
  return DirectionalCDF(mu, h.normal)(h.offset);
}

inline double quantile(const MeasureWithDeviation& mu, const Vec& v, double alpha) {
  require_unit(v, "quantile");
  return DirectionalCDF(mu, v).quantile(alpha);
}

/// Offsets t for which {x . v = t} reliably intersects mu: both sides carry
/// mass at least eps and t lies in the projected support span.
inline Segment reliable_offsets(const DirectionalCDF& cdf, double eps) {
  const auto [lo, hi] = cdf.band();
  const double a = eps <= lo ? cdf.first() : cdf.quantile(std::min(eps, hi));
  const double b = 1.0 - eps >= hi ? cdf.last() : cdf.quantile(std::max(1.0 - eps, lo));
  return {a, b};
}

inline Segment reliable_offsets(const MeasureWithDeviation& mu, const Vec& v) {
  return reliable_offsets(DirectionalCDF(mu, v), mu.eps());
}

/// Both closed sides carry mass at least eps and the hyperplane meets the
/// projected support span; `tol` loosens both tests for certificate rechecks.
inline bool reliably_intersects(const OrientedHyperplane& h, const MeasureWithDeviation& mu, double tol = 0.0) {
  const DirectionalCDF cdf(mu, h.normal);
  const double m = cdf(h.offset);
  return m >= mu.eps() - tol && m <= 1.0 - mu.eps() + tol && h.offset >= cdf.first() - tol &&
         h.offset <= cdf.last() + tol;
}

/// Strict: the side carries more than 1 - eps of the mass.
inline bool almost_contains_negative(const OrientedHyperplane& h, const MeasureWithDeviation& mu) {
  return half_space_mass(mu, h) > 1.0 - mu.eps();
}

inline bool almost_contains_positive(const OrientedHyperplane& h, const MeasureWithDeviation& mu) {
  return 1.0 - half_space_mass(mu, h) > 1.0 - mu.eps();
}

/// Every measure of m1 almost contained in H-, every measure of m2 in H+.
inline bool almost_separates(const OrientedHyperplane& h, const std::vector<MeasureWithDeviation>& m1,
                             const std::vector<MeasureWithDeviation>& m2) {
  return std::all_of(m1.begin(), m1.end(), [&](const auto& mu) { return almost_contains_negative(h, mu); }) &&
         std::all_of(m2.begin(), m2.end(), [&](const auto& mu) { return almost_contains_positive(h, mu); });
}

}  // namespace flatcert
