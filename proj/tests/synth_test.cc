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

#include "dpcp/synth.h"

#include <cmath>

#include <gtest/gtest.h>

namespace dpcp {
namespace {

TEST(SampleSphericalTest, LineInliersLieOnTheBasisDirection) {
  const SyntheticInstance inst = SampleSpherical({.D = 3, .d = 1, .N = 5, .M = 0, .seed = 7});
  ASSERT_EQ(inst.data.size(), 5);
  const Vector u = inst.truth.model.basis().col(0);
  for (Eigen::Index j = 0; j < 5; ++j) {
    EXPECT_NEAR(std::abs(inst.data.column(j).dot(u)), 1.0, 1e-9);
  }
}

TEST(SampleSphericalTest, HighOutlierInstance) {
  const SyntheticInstance inst =
      SampleSpherical({.D = 30, .d = 29, .N = 500, .M = 1167, .seed = 1});
  EXPECT_EQ(inst.data.size(), 1667);
  EXPECT_EQ(inst.data.inlier_count(), 500);
  EXPECT_EQ(inst.data.outlier_count(), 1167);
  EXPECT_NEAR(1167.0 / 1667.0, 0.7, 1e-3);
  const SubspaceModel truth = inst.truth.model.Completed();
  for (Eigen::Index j = 0; j < inst.data.size(); ++j) {
    EXPECT_NEAR(inst.data.column(j).norm(), 1.0, 1e-9);
    if (inst.data.labels()[j] == Label::kInlier) {
      EXPECT_LE((truth.normals().transpose() * inst.data.column(j)).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(SampleSphericalTest, BitIdenticalForEqualSpecs) {
  const SphericalModelSpec spec{.D = 6, .d = 3, .N = 40, .M = 30, .seed = 99};
  const SyntheticInstance a = SampleSpherical(spec);
  const SyntheticInstance b = SampleSpherical(spec);
  EXPECT_TRUE(a.data.columns() == b.data.columns());
  EXPECT_EQ(a.data.labels(), b.data.labels());
  EXPECT_TRUE(a.truth.model.basis() == b.truth.model.basis());
}

TEST(SampleSphericalTest, ColumnsArePermuted) {
  const SyntheticInstance inst = SampleSpherical({.D = 4, .d = 2, .N = 50, .M = 50, .seed = 3});
  // A uniform permutation leaves all inliers first with probability 1/C(100,50).
  bool interleaved = false;
  for (Eigen::Index j = 0; j < 50; ++j) interleaved |= inst.data.labels()[j] == Label::kOutlier;
  EXPECT_TRUE(interleaved);
}

TEST(SampleSphericalTest, RejectsInvalidSpecs) {
  EXPECT_THROW(SampleSpherical({.D = 3, .d = 3, .N = 1}), InvalidArgument);
  EXPECT_THROW(SampleSpherical({.D = 3, .d = 0, .N = 1}), InvalidArgument);
  EXPECT_THROW(SampleSpherical({.D = 3, .d = 1, .N = 0, .M = 0}), InvalidArgument);
  EXPECT_THROW(SampleSpherical({.D = 1, .d = 0, .N = 1}), InvalidArgument);
}

TEST(SampleSphericalTest, OutlierMeanConcentrates) {
  const Eigen::Index M = 10000;
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SyntheticInstance inst = SampleSpherical({.D = 3, .d = 1, .N = 0, .M = M, .seed = seed});
    const Vector mean = inst.data.columns().rowwise().mean();
    within += mean.norm() <= 5.0 / std::sqrt(static_cast<double>(M)) ? 1 : 0;
  }
  EXPECT_GE(within, 95);
}

TEST(OutlierRatioToMTest, Values) {
  EXPECT_EQ(OutlierRatioToM(500, 0.7), 1167);
  EXPECT_EQ(OutlierRatioToM(500, 0.0), 0);
  EXPECT_EQ(OutlierRatioToM(1000, 0.5), 1000);
  EXPECT_THROW(OutlierRatioToM(10, 1.0), InvalidArgument);
  EXPECT_THROW(OutlierRatioToM(10, -0.1), InvalidArgument);
}

TEST(TruthFromLabelsTest, RecoversPlantedSpan) {
  const SyntheticInstance inst = SampleSpherical({.D = 8, .d = 5, .N = 60, .M = 20, .seed = 4});
  const SubspaceModel recovered = TruthFromLabels(inst.data);
  EXPECT_EQ(recovered.basis().cols(), 5);
  EXPECT_LT(MaxPrincipalAngle(recovered.basis(), inst.truth.model.basis()), 1e-9);
}

}  // namespace
}  // namespace dpcp
