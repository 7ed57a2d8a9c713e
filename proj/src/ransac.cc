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

#include "dpcp/ransac.h"

#include <chrono>
#include <numeric>
#include <vector>

#include "dpcp/random.h"

namespace dpcp {

std::int64_t CountConsensus(const Dataset& data, const Matrix& basis, double threshold,
                            const ExecutionPolicy& policy) {
  if (data.empty()) return 0;
  return kernels::CountWithin(data.columns(), basis, threshold, policy);
}

RansacResult Ransac(const Dataset& data, const RansacOptions& options) {
  if (data.empty()) throw InvalidArgument("RANSAC needs data");
  const Eigen::Index dim = data.dim();
  if (options.d < 1 || options.d >= dim) throw InvalidArgument("RANSAC needs 1 <= d < D");
  if (data.size() < options.d) throw InvalidArgument("fewer columns than the subspace dimension");
  if (!(options.threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  if (!options.max_iterations && !options.max_wall_nanos) {
    throw InvalidArgument("RANSAC needs an iteration or wall-clock budget");
  }
  if (options.max_iterations && *options.max_iterations < 1) {
    throw InvalidArgument("iteration budget must be >= 1");
  }
  const ExecutionPolicy policy = options.policy.value_or(DefaultExecutionPolicy());
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start).count();
  };

  Rng rng(DeriveSeed(options.seed, {static_cast<std::uint64_t>(Stream::kRansac)}));
  const Eigen::Index count = data.size();
  std::vector<Eigen::Index> pool(count);
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});

  RansacResult result{.model = SubspaceModel::FromBasis(Matrix::Identity(dim, options.d))};
  result.deterministic = !options.max_wall_nanos.has_value();
  result.consensus = -1;
  std::int64_t degenerate_run = 0;
  Matrix sample(dim, options.d);
  while (true) {
    if (options.max_iterations && result.iterations >= *options.max_iterations) break;
    if (options.max_wall_nanos && elapsed() >= *options.max_wall_nanos &&
        result.iterations > 0) {
      break;
    }
    // Partial Fisher-Yates draw of d distinct columns.
    for (int i = 0; i < options.d; ++i) {
      const auto j = i + static_cast<Eigen::Index>(rng.UniformIndex(count - i));
      std::swap(pool[i], pool[j]);
      sample.col(i) = data.column(pool[i]);
    }
    const auto [q, rank] = Orthonormalize(sample, 1e-10);
    if (rank < options.d) {
      ++result.degenerate_samples;
      if (++degenerate_run >= options.max_consecutive_degenerate) {
        if (result.iterations == 0) throw RuntimeError("RANSAC found no non-degenerate sample");
        break;
      }
      continue;
    }
    degenerate_run = 0;
    ++result.iterations;
    const std::int64_t consensus = CountConsensus(data, q, options.threshold, policy);
    if (consensus > result.consensus) {
      result.consensus = consensus;
      result.model = SubspaceModel(q, OrthonormalComplement(q));
    }
  }
  result.wall_nanos = elapsed();
  return result;
}

}  // namespace dpcp
