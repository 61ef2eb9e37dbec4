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

// Sphere search helpers shared by the solvers: partitions of index sets,
// grid sweeps over directions, and local refinement of a direction.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/optimize.hpp"

namespace flatcert {

/// Split of {0, ..., count-1} into two nonempty parts.
struct Partition {
  std::vector<int> i1;
  std::vector<int> i2;

  /// Parses "1|2,3" (1-based, as on the command line).
  static Partition parse(const std::string& text, int count) {
    const auto bar = text.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("partition: expected 'a,b|c,d'");
    auto side = [&](const std::string& s) {
      std::vector<int> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item) - 1);
      }
      return out;
    };
    Partition p{side(text.substr(0, bar)), side(text.substr(bar + 1))};
    p.validate(count);
    return p;
  }

  /// All ordered partitions of `count` indices into two nonempty parts.
  static std::vector<Partition> all(int count) {
    std::vector<Partition> out;
    for (int mask = 1; mask < (1 << count) - 1; ++mask) {
      Partition p;
      for (int i = 0; i < count; ++i) (mask >> i & 1 ? p.i1 : p.i2).push_back(i);
      out.push_back(p);
    }
    return out;
  }

  void validate(int count) const {
    if (i1.empty() || i2.empty()) throw std::invalid_argument("partition: both parts must be nonempty");
    std::vector<int> seen(count, 0);
    for (const auto* part : {&i1, &i2}) {
      for (int i : *part) {
        if (i < 0 || i >= count) throw std::invalid_argument("partition: index out of range");
        if (seen[i]++) throw std::invalid_argument("partition: repeated index");
      }
    }
    if (static_cast<int>(i1.size() + i2.size()) != count) throw std::invalid_argument("partition: indices missing");
  }

  std::string str() const {
    std::string s;
    for (size_t j = 0; j < i1.size(); ++j) s += (j ? "," : "") + std::to_string(i1[j] + 1);
    s += "|";
    for (size_t j = 0; j < i2.size(); ++j) s += (j ? "," : "") + std::to_string(i2[j] + 1);
    return s;
  }
};

struct DirectionOptimum {
  Vec v;
  double value = -std::numeric_limits<double>::infinity();
  int node = -1;
};

/// Maximizes f over grid poles. Ties go to the lexicographically smaller pole.
template <class F>
DirectionOptimum sweep_max(const DirectionGrid& grid, F&& f, bool representatives_only) {
  DirectionOptimum best;
  for (int i = 0; i < grid.size(); ++i) {
    if (representatives_only && grid.pair[i] < i) continue;
    const Vec v = grid.pole(i);
    const double val = f(v);
    if (val > best.value || (val == best.value && best.node >= 0 && lexicographically_less(grid.nodes[i], grid.nodes[best.node]))) {
      best = {v, val, i};
    }
  }
  return best;
}

/// Nelder-Mead ascent of f on the unit sphere around v0.
template <class F>
DirectionOptimum refine_max(const Vec& v0, double v0_value, F&& f, double step, int budget = 500) {
  const FrameChart chart(Mat(v0), false);
  auto neg = [&](const Vec& t) { return -f(Vec(chart.frame(t).col(0))); };
  const LocalResult r = nelder_mead_restarts(neg, Vec::Zero(chart.dimension()), step, budget);
  DirectionOptimum out{v0, v0_value, -1};
  if (-r.value > v0_value) {
    out.v = chart.frame(r.x).col(0);
    out.value = -r.value;
  }
  return out;
}

}  // namespace flatcert
