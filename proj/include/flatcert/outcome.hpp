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

// Solver outcomes. Solvers return a verdict together with either a
// certificate or a diagnostic; they never hand back unverified objects.

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>

namespace flatcert {

enum class Verdict { kCertified, kPreconditionFailed, kResolutionFailure };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return "certified";
    case Verdict::kPreconditionFailed:
      return "precondition-failed";
    case Verdict::kResolutionFailure:
      return "resolution-failure";
  }
  return "unknown";
}

/// Process exit code for a verdict: 0, 2 or 3.
inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return 0;
    case Verdict::kPreconditionFailed:
      return 2;
    case Verdict::kResolutionFailure:
      return 3;
  }
  return 3;
}

template <class T>
struct Outcome {
  Verdict verdict = Verdict::kResolutionFailure;
  std::optional<T> value;  // set when certified; may hold a partial result otherwise
  std::string message;
  double best_residual = std::numeric_limits<double>::infinity();

  bool certified() const { return verdict == Verdict::kCertified; }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  static Outcome ok(T v, double residual) {
    Outcome o;
    o.verdict = Verdict::kCertified;
    o.value = std::move(v);
    o.best_residual = residual;
    return o;
  }
  static Outcome precondition(std::string why) {
    Outcome o;
    o.verdict = Verdict::kPreconditionFailed;
    o.message = std::move(why);
    return o;
  }
  static Outcome resolution(std::string why, double residual) {
    Outcome o;
    o.verdict = Verdict::kResolutionFailure;
    o.message = std::move(why);
    o.best_residual = residual;
    return o;
  }
};

}  // namespace flatcert
