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

// RANSAC subspace fitting: sample d columns, orthonormalize, count the
// columns within `threshold` of their span, keep the best.

#include <cstdint>
#include <optional>

#include "dpcp/core.h"
#include "dpcp/kernels.h"

namespace dpcp {

struct RansacOptions {
  int d = 1;
  double threshold = 1e-3;
  // Exactly one budget should be set. Iteration budgets count only
  // non-degenerate samples and are deterministic; wall-clock budgets are not.
  std::optional<std::int64_t> max_iterations;
  std::optional<std::int64_t> max_wall_nanos;
  std::uint64_t seed = 0;
  // Safety valve: give up after this many consecutive rank-deficient samples.
  std::int64_t max_consecutive_degenerate = 10000;
  std::optional<ExecutionPolicy> policy;
};

struct RansacResult {
  SubspaceModel model;  // basis and normals
  std::int64_t consensus = 0;
  std::int64_t iterations = 0;
  std::int64_t degenerate_samples = 0;
  bool deterministic = true;
  std::int64_t wall_nanos = 0;
};

RansacResult Ransac(const Dataset& data, const RansacOptions& options);

// Columns within `threshold` of span(basis) (basis orthonormal).
std::int64_t CountConsensus(const Dataset& data, const Matrix& basis, double threshold,
                            const ExecutionPolicy& policy = DefaultExecutionPolicy());

}  // namespace dpcp
