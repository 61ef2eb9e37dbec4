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

#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace flatcert {

/// tau[w] = the left vertex assigned to w, or the deficient set V' with
/// |N(V')| < sum of quotas over V'.
struct HallResult {
  bool feasible = false;
  std::vector<int> tau;
  std::vector<int> deficient;
};

/// Number of right vertices adjacent to some vertex of `vs`.
inline int neighborhood_size(const std::vector<std::vector<bool>>& adj, const std::vector<int>& vs) {
  if (adj.empty()) return 0;
  int count = 0;
  for (size_t w = 0; w < adj.front().size(); ++w) {
    for (int v : vs) {
      if (adj[v][w]) {
        ++count;
        break;
      }
    }
  }
  return count;
}

inline bool is_deficient(const std::vector<std::vector<bool>>& adj, const std::vector<int>& quota,
                         const std::vector<int>& vs) {
  int need = 0;
  for (int v : vs) need += quota[v];
  return !vs.empty() && neighborhood_size(adj, vs) < need;
}

inline bool is_quota_matching(const std::vector<std::vector<bool>>& adj, const std::vector<int>& quota,
                              const std::vector<int>& tau) {
  std::vector<int> load(quota.size(), 0);
  for (size_t w = 0; w < tau.size(); ++w) {
    if (tau[w] < 0 || tau[w] >= static_cast<int>(quota.size()) || !adj[tau[w]][w]) return false;
    ++load[tau[w]];
  }
  return load == quota;
}

namespace detail {

class CopyMatcher {
 public:
  CopyMatcher(const std::vector<std::vector<bool>>& adj, const std::vector<int>& quota) : adj_(adj) {
    for (size_t v = 0; v < quota.size(); ++v) {
      for (int c = 0; c < quota[v]; ++c) owner_.push_back(static_cast<int>(v));
    }
    nw_ = adj.empty() ? 0 : static_cast<int>(adj.front().size());
    match_w_.assign(nw_, -1);
  }

  // Returns the first copy left unmatched, or -1 when every copy is matched.
  int run() {
    for (int c = 0; c < static_cast<int>(owner_.size()); ++c) {
      seen_.assign(nw_, false);
      if (!augment(c)) return c;
    }
    return -1;
  }

  // Left vertices reachable from copy `c` by alternating paths.
  std::vector<int> reach(int c) {
    std::vector<bool> in_v(adj_.size(), false);
    seen_.assign(nw_, false);
    std::vector<int> stack{c};
    std::vector<bool> copy_seen(owner_.size(), false);
    copy_seen[c] = true;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      in_v[owner_[cur]] = true;
      for (int w = 0; w < nw_; ++w) {
        if (!adj_[owner_[cur]][w] || seen_[w]) continue;
        seen_[w] = true;
        const int next = match_w_[w];
        if (next >= 0 && !copy_seen[next]) {
          copy_seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    std::vector<int> out;
    for (size_t v = 0; v < in_v.size(); ++v) {
      if (in_v[v]) out.push_back(static_cast<int>(v));
    }
    return out;
  }

  std::vector<int> tau() const {
    std::vector<int> t(nw_, -1);
    for (int w = 0; w < nw_; ++w) {
      if (match_w_[w] >= 0) t[w] = owner_[match_w_[w]];
    }
    return t;
  }

 private:
  bool augment(int c) {
    const int v = owner_[c];
    for (int w = 0; w < nw_; ++w) {
      if (!adj_[v][w] || seen_[w]) continue;
      seen_[w] = true;
      if (match_w_[w] < 0 || augment(match_w_[w])) {
        match_w_[w] = c;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<bool>>& adj_;
  std::vector<int> owner_;
  int nw_ = 0;
  std::vector<int> match_w_;
  std::vector<bool> seen_;
};

// Shrinks a deficient set to an inclusion-minimal one. Small sets are
// searched by increasing size, so the result has minimum cardinality.
inline std::vector<int> minimize_deficient(const std::vector<std::vector<bool>>& adj, const std::vector<int>& quota,
                                           std::vector<int> vs) {
  const int m = static_cast<int>(vs.size());
  if (m <= 16) {
    for (int size = 1; size <= m; ++size) {
      for (int mask = 1; mask < (1 << m); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        std::vector<int> sub;
        for (int i = 0; i < m; ++i) {
          if (mask >> i & 1) sub.push_back(vs[i]);
        }
        if (is_deficient(adj, quota, sub)) return sub;
      }
    }
    return vs;
  }
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (size_t i = 0; i < vs.size(); ++i) {
      std::vector<int> sub = vs;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      if (is_deficient(adj, quota, sub)) {
        vs = std::move(sub);
        shrunk = true;
        break;
      }
    }
  }
  return vs;
}

}  // namespace detail

/// Assigns every right vertex w to an adjacent left vertex tau(w) so that v
/// receives exactly quota[v] vertices, by splitting v into quota[v] copies
/// and matching with augmenting paths. adj is |V| x |W|.
inline HallResult hall_matching(const std::vector<std::vector<bool>>& adj, const std::vector<int>& quota) {
  const int nw = adj.empty() ? 0 : static_cast<int>(adj.front().size());
  if (adj.size() != quota.size()) throw std::invalid_argument("hall_matching: one quota per left vertex");
  for (const auto& row : adj) {
    if (static_cast<int>(row.size()) != nw) throw std::invalid_argument("hall_matching: ragged adjacency");
  }
  for (int a : quota) {
    if (a <= 0) throw std::invalid_argument("hall_matching: quotas must be positive");
  }
  if (std::accumulate(quota.begin(), quota.end(), 0) != nw) {
    throw std::invalid_argument("hall_matching: quotas must sum to |W|");
  }
  detail::CopyMatcher m(adj, quota);
  HallResult out;
  const int stuck = m.run();
  if (stuck < 0) {
    out.feasible = true;
    out.tau = m.tau();
    return out;
  }
  out.deficient = detail::minimize_deficient(adj, quota, m.reach(stuck));
  return out;
}

}  // namespace flatcert
