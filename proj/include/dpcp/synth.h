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

#pragma once

#include <cstdint>

#include "dpcp/core.h"

namespace dpcp {

// Random spherical model: N inliers uniform on S ∩ S^{D-1}, M outliers
// uniform on S^{D-1}, S uniform on the Grassmannian of d-planes.
struct SphericalModelSpec {
  int D = 3;
  int d = 2;
  Eigen::Index N = 0;
  Eigen::Index M = 0;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct GroundTruth {
  SubspaceModel model;
  SphericalModelSpec spec;
};

struct SyntheticInstance {
  Dataset data;
  GroundTruth truth;
};

// Columns are shuffled by a uniform random permutation; labels travel with
// their columns. Bit-identical output for equal specs.
SyntheticInstance SampleSpherical(const SphericalModelSpec& spec);

// round(ratio * N / (1 - ratio)), for outlier ratio M / (M + N).
Eigen::Index OutlierRatioToM(Eigen::Index N, double ratio);

// Truth recovered from labeled data: the span of the inlier columns, with
// numerical rank decided relative to the largest singular value.
SubspaceModel TruthFromLabels(const Dataset& data, double rank_tolerance = 1e-8);

}  // namespace dpcp
