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

// Umbrella header for the flatcert library.

#pragma once

#include "flatcert/alternative.hpp"
#include "flatcert/caps.hpp"
#include "flatcert/colored.hpp"
#include "flatcert/convex.hpp"
#include "flatcert/covering.hpp"
#include "flatcert/digest.hpp"
#include "flatcert/flats.hpp"
#include "flatcert/geometry.hpp"
#include "flatcert/grid.hpp"
#include "flatcert/halfsphere.hpp"
#include "flatcert/hall.hpp"
#include "flatcert/measure.hpp"
#include "flatcert/measure_partition.hpp"
#include "flatcert/outcome.hpp"
#include "flatcert/predicates.hpp"
#include "flatcert/sections.hpp"
#include "flatcert/shapes.hpp"
#include "flatcert/tolerances.hpp"
