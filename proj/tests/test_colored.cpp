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

#include <gtest/gtest.h>

#include "flatcert/colored.hpp"
#include "flatcert/generate.hpp"
#include "flatcert/oracles.hpp"
#include "flatcert/shapes.hpp"

namespace flatcert {
namespace {

using shapes::ball;
using shapes::disc;

TEST(Colored, SharedPointGivesSubfamilyAlternative) {
  const std::vector<std::vector<CompactSet>> fam = {
      {disc(vec({0, 0}), 1), disc(vec({0.5, 0}), 1)},
      {disc(vec({0, 0.5}), 1), disc(vec({-0.5, 0}), 1), disc(vec({0, -0.5}), 1)}};
  const auto out = colored_transversal_check(fam, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_FALSE(out->empty_tuple);
  EXPECT_EQ(out->good_family, 0);
  EXPECT_EQ(out->tuples_checked, 6);
}

TEST(Colored, FarMembersGiveEmptyTuple) {
  const std::vector<std::vector<CompactSet>> fam = {{ball(vec({-5, 0, 0}), 1)}, {ball(vec({5, 0, 0}), 1)}};
  const auto out = colored_transversal_check(fam, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_EQ(out->variant, ColoredVariant::kTwoFamilies);
  EXPECT_TRUE(out->empty_tuple);
  EXPECT_EQ(out->tuple, (std::vector<int>{0, 0}));
}

TEST(Colored, ParallelLines) {
  std::vector<std::vector<CompactSet>> fam(2);
  for (int j = 0; j < 3; ++j) {
    fam[0].push_back(disc(vec({4.0 * j, 0}), 1));
    fam[1].push_back(disc(vec({4.0 * j + 1, 5}), 1));
  }
  const auto out = colored_transversal_check(fam, 1);
  ASSERT_TRUE(out.certified()) << out.message;
  EXPECT_TRUE(out->empty_tuple);
  EXPECT_LT(out->good_family, 0);
  ASSERT_TRUE(out->parallel);
  EXPECT_NEAR(std::abs(out->direction(0, 0)), 1.0, 1e-9);
}

TEST(Colored, Preconditions) {
  const std::vector<std::vector<CompactSet>> fam = {{disc(vec({0, 0}), 1)}, {disc(vec({0, 0}), 1)}};
  ColoredOptions opt;
  opt.m = 1;
  EXPECT_EQ(colored_transversal_check(fam, 1, opt).verdict, Verdict::kPreconditionFailed);
  EXPECT_EQ(colored_transversal_check({fam[0]}, 1).verdict, Verdict::kPreconditionFailed);
  EXPECT_EQ(colored_transversal_check(fam, 2).verdict, Verdict::kPreconditionFailed);
}

TEST(Colored, EmptyTupleMatchesOracle) {
  gen::Rng rng(31);
  int empties = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<std::vector<CompactSet>> fam;
    for (int f = 0; f < 2; ++f) fam.push_back(gen::convex_tuple(rng, 2, 1 + gen::uniform_int(rng, 0, 2), 2.0));
    const auto out = colored_transversal_check(fam, 1);
    ASSERT_TRUE(out.value.has_value()) << out.message;
    const auto ref = oracle::tuple_intersection(fam);
    EXPECT_EQ(out->empty_tuple, ref.empty > 0);
    if (out->empty_tuple) ++empties;
    if (out.certified()) {
      EXPECT_FALSE(out->holding().empty());
    }
  }
  EXPECT_GT(empties, 5);
  EXPECT_LT(empties, 55);
}

}  // namespace
}  // namespace flatcert
