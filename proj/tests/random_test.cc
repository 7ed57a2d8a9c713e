// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
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

#include "dpcp/random.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace dpcp {
namespace {

// The 10000th output of a default-constructed mt19937_64 is fixed by the
// C++ standard ([rand.predef]).
TEST(RngTest, EngineMatchesStandardReferenceValue) {
  Rng rng(5489u);
  std::uint64_t value = 0;
  for (int i = 0; i < 10000; ++i) value = rng.NextU64();
  EXPECT_EQ(value, 9981545732273789042ULL);
}

// First output of the reference SplitMix64 generator started from state 0.
TEST(SplitMix64Test, ReferenceValue) { EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL); }

TEST(DeriveSeedTest, DistinctPathsGiveDistinctSeeds) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t root : {0ULL, 1ULL}) {
    for (std::uint64_t tag = 1; tag <= 10; ++tag) {
      seeds.insert(DeriveSeed(root, {tag}));
      seeds.insert(DeriveSeed(root, {tag, 0}));
      seeds.insert(DeriveSeed(root, {tag, 1}));
    }
  }
  EXPECT_EQ(seeds.size(), 60u);
  EXPECT_EQ(DeriveSeed(7, {1, 2}), DeriveSeed(7, {1, 2}));
}

TEST(RngTest, UniformUsesTopFiftyThreeBits) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.Uniform();
    EXPECT_EQ(u, static_cast<double>(b.NextU64() >> 11) / 9007199254740992.0);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngTest, UniformIndexCoversRangeEvenly) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.UniformIndex(7)];
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
  EXPECT_LT(chi2, 22.46);
  EXPECT_THROW(rng.UniformIndex(0), InvalidArgument);
}

TEST(RngTest, NormalMoments) {
  Rng rng(13);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(n));
  // Var of the sample variance of N(0,1) is 2/n.
  EXPECT_LT(std::abs(var - 1.0), 4.0 * std::sqrt(2.0 / n));
}

TEST(RngTest, SphereVectorIsUnitAndCentered) {
  Rng rng(17);
  Vector mean = Vector::Zero(4);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vector v = rng.SphereVector(4);
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    mean += v;
  }
  mean /= n;
  // Each coordinate has variance 1/4 on S^3.
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 4.0 * std::sqrt(0.25 / n));
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(123), b(123);
  EXPECT_TRUE(a.NormalMatrix(3, 4) == b.NormalMatrix(3, 4));
}

}  // namespace
}  // namespace dpcp
