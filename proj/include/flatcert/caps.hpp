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

// Unions of spherical caps on S^{d-1} in R^d. Used as closed cover sets and
// as open target sets; all distances are angular and closed-form.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "flatcert/geometry.hpp"

namespace flatcert {

/// Angle between unit vectors, accurate near 0 and pi.
inline double angle_between(const Vec& a, const Vec& b) { return 2.0 * std::atan2((a - b).norm(), (a + b).norm()); }

struct Cap {
  Vec center;           // unit
  double radius = 0.0;  // angular, in (0, pi)
};

class CapUnion {
 public:
  CapUnion() = default;
  explicit CapUnion(std::vector<Cap> caps) : caps_(std::move(caps)) {
    if (caps_.empty()) throw std::invalid_argument("CapUnion: no caps");
    const auto d = caps_.front().center.size();
    for (auto& c : caps_) {
      if (c.center.size() != d) throw std::invalid_argument("CapUnion: mixed dimensions");
      if (std::abs(c.center.norm() - 1.0) > 1e-9) throw std::invalid_argument("CapUnion: centers must be unit vectors");
      if (!(c.radius > 0.0 && c.radius < kPi)) throw std::invalid_argument("CapUnion: radius must lie in (0, pi)");
      c.center.normalize();
    }
  }

  /// Arc on S^1 from `from_deg` counterclockwise to `to_deg` (degrees).
  static Cap arc(double from_deg, double to_deg) {
    double span = std::fmod(to_deg - from_deg, 360.0);
    if (span <= 0) span += 360.0;
    const double mid = (from_deg + 0.5 * span) * kPi / 180.0;
    return {vec({std::cos(mid), std::sin(mid)}), 0.5 * span * kPi / 180.0};
  }

  const std::vector<Cap>& caps() const { return caps_; }
  int ambient() const { return static_cast<int>(caps_.front().center.size()); }

  /// min over caps of (angle to center - radius); negative inside.
  double signed_distance(const Vec& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : caps_) best = std::min(best, angle_between(x, c.center) - c.radius);
    return best;
  }

  double distance(const Vec& x) const { return std::max(0.0, signed_distance(x)); }
  bool contains(const Vec& x, double tol = 0.0) const { return signed_distance(x) <= tol; }

  CapUnion rotated(const Mat& rotation) const {
    std::vector<Cap> out = caps_;
    for (auto& c : out) c.center = rotation * c.center;
    return CapUnion(std::move(out));
  }

 private:
  std::vector<Cap> caps_;
};

}  // namespace flatcert
