// Copyright 2026 The leoho Authors.
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


#include "leoho/random.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace leoho {
namespace {

std::vector<std::uint64_t> First100(RandomStream stream) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < 100; ++i) out.push_back(stream.NextRaw());
  return out;
}

TEST(SplitMix64Test, MatchesReferenceOutput) {
  // First output of the reference generator seeded with 0.
  EXPECT_EQ(SplitMix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(Fnv1a64Test, MatchesReferenceVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(RandomStreamTest, SameInputsGiveIdenticalDraws) {
  EXPECT_EQ(First100(DeriveStream(7, 3, "channel")),
            First100(DeriveStream(7, 3, "channel")));
}

TEST(RandomStreamTest, DifferentReplicatesDiffer) {
  EXPECT_NE(First100(DeriveStream(7, 3, "channel")),
            First100(DeriveStream(7, 4, "channel")));
}

TEST(RandomStreamTest, PurposesAreSeparated) {
  const auto a = First100(DeriveStream(7, 3, "channel"));
  const auto b = First100(DeriveStream(7, 3, "placement"));
  EXPECT_NE(a, b);
  int equal = 0;
  for (size_t i = 0; i < a.size(); ++i) equal += a[i] == b[i];
  EXPECT_EQ(equal, 0);
}

TEST(RandomStreamTest, DerivedSeedsAreDistinctAcrossReplicates) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 1000; ++r) seeds.push_back(DeriveSeed(1, r));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(RandomStreamTest, UniformAndNormalMoments) {
  RandomStream rng(42, "moments");
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.StandardNormal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
}

}  // namespace
}  // namespace leoho
