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

// Canonical byte digests for instances and reports (64-bit FNV-1a).

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace flatcert {

class Digest {
 public:
  Digest& bytes(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 1099511628211ULL;
    }
    return *this;
  }
  Digest& number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g;", x);
    return bytes(buf);
  }
  Digest& integer(long long x) { return bytes(std::to_string(x) + ";"); }
  Digest& matrix(const Eigen::MatrixXd& m) {
    integer(m.rows());
    integer(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) number(m(i, j));
    }
    return *this;
  }
  std::uint64_t value() const { return h_; }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 1469598103934665603ULL;
};

inline std::string fnv1a_hex(std::string_view s) { return Digest().bytes(s).hex(); }

}  // namespace flatcert
