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

namespace flatcert {

// Predicates on exact input data.
inline constexpr double kGeoTol = 1e-9;
// Acceptance threshold for solver certificates.
inline constexpr double kSolveTol = 1e-6;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace flatcert
