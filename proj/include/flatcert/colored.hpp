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

// Brute-force alternative reports for colored Helly-type families in
// dimensions up to three.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatcert/convex.hpp"
#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/outcome.hpp"

namespace flatcert {

enum class ColoredVariant {
  kParallelFlats,  // n-k+1 families; third alternative: parallel k-flats
  kTwoFamilies,    // n = 3, k = 1, two families
};

struct ColoredReport {
  ColoredVariant variant = ColoredVariant::kParallelFlats;
  int k = 0;

  // Alternative 1: a system of representatives with empty intersection.
  bool empty_tuple = false;
  std::vector<int> tuple;  // member index per family
  long long tuples_checked = 0;

  // Alternative 2: a family whose small subfamilies all have a transversal
  // of dimension `sub_dim`, searched over subfamilies of size <= `sub_size`.
  int sub_size = 0;
  int sub_dim = 0;
  std::vector<bool> family_ok;          // per family
  std::vector<std::vector<int>> failing;  // per family: a subfamily with no transversal found
  int good_family = -1;

  // Alternative 3 (parallel-flats variant): a direction subspace with every
  // family projected to a common point.
  bool parallel = false;
  Mat direction;

  bool inconclusive = false;
  std::string note;
  long long work = 0;

  std::vector<int> holding() const {
    std::vector<int> out;
    if (empty_tuple) out.push_back(1);
    if (good_family >= 0) out.push_back(2);
    if (parallel) out.push_back(3);
    return out;
  }
};

struct ColoredOptions {
  long long budget = 100000;  // tuples plus subspace probes
  double resolution = 0.0;    // subspace sampling; 0: 2pi/256 on S^1, 0.15 otherwise
  double tol = kGeoTol;
  std::uint64_t seed = 0;
  int m = 0;                  // nonzero requests the higher-dimensional variant
};

namespace detail {

struct TransversalSearch {
  bool found = false;
  Mat direction;
  long long probes = 0;
};

// A flat of dimension j meeting every set: exact for j = 0, otherwise a sweep
// over sampled direction subspaces with a common-point test after projecting
// along them. A miss is limited by the sampling.
inline TransversalSearch find_transversal(const std::vector<CompactSet>& sets, int j, double resolution,
                                          double tol, std::uint64_t seed, long long budget) {
  TransversalSearch out;
  const int n = sets.front().dimension();
  if (j == 0) {
    out.probes = 1;
    out.found = common_point(sets, tol).nonempty;
    out.direction = Mat(n, 0);
    return out;
  }
  if (j >= n) {
    out.found = true;
    out.direction = Mat::Identity(n, n);
    return out;
  }
  for (const Mat& d : subspace_sample(n, j, resolution, seed)) {
    if (out.probes++ >= budget) return out;
    const Mat proj = Mat::Identity(n, n) - d * d.transpose();
    std::vector<Piece> hulls;
    for (const auto& s : sets) hulls.push_back(proj * s.vertices());
    if (common_point(hulls, tol).nonempty) {
      out.found = true;
      out.direction = d;
      return out;
    }
  }
  return out;
}

inline void subsets_up_to(int count, int size, std::vector<std::vector<int>>& out) {
  for (int mask = 1; mask < (1 << count); ++mask) {
    if (__builtin_popcount(mask) > size) continue;
    std::vector<int> s;
    for (int i = 0; i < count; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(s);
  }
}

}  // namespace detail

/// Checks which alternatives of the colored Helly-type theorems hold for the
/// given families. With n - k + 1 families the three-way alternative with
/// parallel k-flats applies; with two families in R^3 and k = 1 the two-way
/// alternative (line transversals of triples) applies.
inline Outcome<ColoredReport> colored_transversal_check(const std::vector<std::vector<CompactSet>>& families, int k,
                                                        const ColoredOptions& opt = {}) {
  using Out = Outcome<ColoredReport>;
  if (families.empty() || families.front().empty()) return Out::precondition("need nonempty families");
  const int n = families.front().front().dimension();
  if (n < 2 || n > 3) return Out::precondition("colored check is supported for n = 2, 3");
  for (size_t f = 0; f < families.size(); ++f) {
    if (families[f].empty() || families[f].size() > 6) {
      return Out::precondition("family " + std::to_string(f + 1) + " must have 1 to 6 members");
    }
    for (const auto& s : families[f]) {
      if (s.dimension() != n || s.pieces().size() != 1) {
        return Out::precondition("family " + std::to_string(f + 1) + " has a non-convex or mismatched member");
      }
    }
  }
  if (opt.m > 0) {
    return Out::precondition("the variant with parameter m needs k > 2 and 2k < n + 2, impossible for n <= 3");
  }
  if (k < 1 || k >= n) return Out::precondition("need 0 < k < n");

  ColoredReport r;
  r.k = k;
  const int q = static_cast<int>(families.size());
  if (n == 3 && k == 1 && q == 2) {
    r.variant = ColoredVariant::kTwoFamilies;
    r.sub_size = 3;
    r.sub_dim = 1;
  } else if (q == n - k + 1) {
    r.variant = ColoredVariant::kParallelFlats;
    r.sub_size = k + 1;
    r.sub_dim = k - 1;
  } else {
    std::ostringstream msg;
    msg << "need n-k+1 = " << n - k + 1 << " families (or 2 families with n = 3, k = 1), got " << q;
    return Out::precondition(msg.str());
  }
  const double res = opt.resolution > 0 ? opt.resolution : (n == 2 ? 2.0 * kPi / 256.0 : 0.15);
  long long left = opt.budget;

  // Alternative 1: every system of representatives.
  long long total = 1;
  for (const auto& f : families) total *= static_cast<long long>(f.size());
  if (total > left) {
    r.inconclusive = true;
    r.note = "tuple enumeration exceeds the budget";
  } else {
    std::vector<int> idx(q, 0);
    for (long long t = 0; t < total && !r.empty_tuple; ++t) {
      std::vector<Piece> hulls;
      for (int i = 0; i < q; ++i) hulls.push_back(families[i][idx[i]].vertices());
      ++r.tuples_checked;
      if (!common_point(hulls, opt.tol).nonempty) {
        r.empty_tuple = true;
        r.tuple = idx;
      }
      for (int i = 0; i < q; ++i) {
        if (++idx[i] < static_cast<int>(families[i].size())) break;
        idx[i] = 0;
      }
    }
    left -= r.tuples_checked;
  }

  // Alternative 2: small subfamilies with transversals.
  r.family_ok.assign(q, false);
  r.failing.assign(q, {});
  for (int f = 0; f < q; ++f) {
    std::vector<std::vector<int>> subs;
    detail::subsets_up_to(static_cast<int>(families[f].size()), r.sub_size, subs);
    bool ok = true;
    for (const auto& s : subs) {
      std::vector<CompactSet> part;
      for (int i : s) part.push_back(families[f][i]);
      const auto t = detail::find_transversal(part, r.sub_dim, res, opt.tol, opt.seed, left);
      left -= t.probes;
      if (left <= 0) {
        r.inconclusive = true;
        r.note = "budget exhausted during the subfamily checks";
        ok = false;
        break;
      }
      if (!t.found) {
        ok = false;
        r.failing[f] = s;
        break;
      }
    }
    r.family_ok[f] = ok;
    if (ok && r.good_family < 0) r.good_family = f;
  }

  // Alternative 3: parallel k-flats, one per family, sharing a direction.
  if (r.variant == ColoredVariant::kParallelFlats && left > 0) {
    for (const Mat& d : subspace_sample(n, k, res, opt.seed)) {
      if (left-- <= 0) {
        r.inconclusive = true;
        r.note = "budget exhausted during the parallel-flat sweep";
        break;
      }
      const Mat proj = Mat::Identity(n, n) - d * d.transpose();
      bool all = true;
      for (const auto& fam : families) {
        std::vector<Piece> hulls;
        for (const auto& s : fam) hulls.push_back(proj * s.vertices());
        if (!common_point(hulls, opt.tol).nonempty) {
          all = false;
          break;
        }
      }
      if (all) {
        r.parallel = true;
        r.direction = d;
        break;
      }
    }
  }
  r.work = opt.budget - left;
  if (r.holding().empty() && !r.inconclusive) {
    r.inconclusive = true;
    r.note = "no alternative confirmed at this sampling resolution";
  }
  if (r.inconclusive && r.holding().empty()) {
    Out partial = Out::resolution(r.note, 0.0);
    partial.value = r;
    return partial;
  }
  return Out::ok(r, 0.0);
}

}  // namespace flatcert
