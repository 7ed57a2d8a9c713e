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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "dpcp/kernels.h"

namespace dpcp {
namespace {

std::mutex& PolicyMutex() {
  static std::mutex mutex;
  return mutex;
}

ExecutionPolicy& PolicyStorage() {
  static ExecutionPolicy policy;
  return policy;
}

}  // namespace

ExecutionPolicy DefaultExecutionPolicy() {
  std::lock_guard lock(PolicyMutex());
  return PolicyStorage();
}

void SetDefaultExecutionPolicy(const ExecutionPolicy& policy) {
  std::lock_guard lock(PolicyMutex());
  PolicyStorage() = policy;
}

namespace kernels {
namespace {

int TeamSize(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

Eigen::Index ChunkCount(Eigen::Index columns) {
  return (columns + kChunkColumns - 1) / kChunkColumns;
}

}  // namespace

namespace omp {

void Project(const Matrix& x, const Vector& b, Vector& out, int threads) {
  const Eigen::Index n = x.cols();
  out.resize(n);
#pragma omp parallel for schedule(static) num_threads(TeamSize(threads))
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j] = x.col(j).dot(b);
  }
}

double L1(const Matrix& x, const Vector& b, ReductionMode mode, int threads) {
  const Eigen::Index n = x.cols();
  if (mode == ReductionMode::kFast) {
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) \
    num_threads(TeamSize(threads))
    for (Eigen::Index j = 0; j < n; ++j) {
      total += std::abs(x.col(j).dot(b));
    }
    return total;
  }
  const Eigen::Index chunks = ChunkCount(n);
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static) num_threads(TeamSize(threads))
  for (Eigen::Index c = 0; c < chunks; ++c) {
    const Eigen::Index end = std::min(n, (c + 1) * kChunkColumns);
    double sum = 0.0;
    for (Eigen::Index j = c * kChunkColumns; j < end; ++j) {
      sum += std::abs(x.col(j).dot(b));
    }
    partial[c] = sum;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

SignedSum SignedColumnSum(const Matrix& x, const Vector& projections,
                          ReductionMode mode, int threads) {
  const Eigen::Index n = x.cols();
  const Eigen::Index dim = x.rows();
  SignedSum result{Vector::Zero(dim), 0.0};

  auto accumulate = [&](Eigen::Index begin, Eigen::Index end, Vector& sum,
                        double& l1) {
    for (Eigen::Index j = begin; j < end; ++j) {
      const double p = projections[j];
      if (p > 0.0) {
        sum += x.col(j);
      } else if (p < 0.0) {
        sum -= x.col(j);
      }
      l1 += std::abs(p);
    }
  };

  if (mode == ReductionMode::kFast) {
    std::mutex merge;
#pragma omp parallel num_threads(TeamSize(threads))
    {
      Vector local = Vector::Zero(dim);
      double local_l1 = 0.0;
      const int team = omp_get_num_threads();
      const int id = omp_get_thread_num();
      const Eigen::Index begin = n * id / team;
      const Eigen::Index end = n * (id + 1) / team;
      accumulate(begin, end, local, local_l1);
      std::lock_guard lock(merge);
      result.sum += local;
      result.l1 += local_l1;
    }
    return result;
  }

  const Eigen::Index chunks = ChunkCount(n);
  Matrix partial = Matrix::Zero(dim, chunks);
  std::vector<double> partial_l1(chunks, 0.0);
#pragma omp parallel for schedule(static) num_threads(TeamSize(threads))
  for (Eigen::Index c = 0; c < chunks; ++c) {
    Vector sum = Vector::Zero(dim);
    double l1 = 0.0;
    accumulate(c * kChunkColumns, std::min(n, (c + 1) * kChunkColumns), sum, l1);
    partial.col(c) = sum;
    partial_l1[c] = l1;
  }
  for (Eigen::Index c = 0; c < chunks; ++c) {
    result.sum += partial.col(c);
    result.l1 += partial_l1[c];
  }
  return result;
}

Matrix WeightedGram(const Matrix& x, const Vector& weights, ReductionMode mode,
                    int threads) {
  const Eigen::Index n = x.cols();
  const Eigen::Index dim = x.rows();
  auto accumulate = [&](Eigen::Index begin, Eigen::Index end) {
    Matrix block = x.middleCols(begin, end - begin);
    Matrix gram = Matrix::Zero(dim, dim);
    gram.noalias() = block * weights.segment(begin, end - begin).asDiagonal() *
                     block.transpose();
    return gram;
  };

  Matrix gram = Matrix::Zero(dim, dim);
  if (mode == ReductionMode::kFast) {
    std::mutex merge;
#pragma omp parallel num_threads(TeamSize(threads))
    {
      const int team = omp_get_num_threads();
      const int id = omp_get_thread_num();
      const Eigen::Index begin = n * id / team;
      const Eigen::Index end = n * (id + 1) / team;
      if (end > begin) {
        Matrix local = accumulate(begin, end);
        std::lock_guard lock(merge);
        gram += local;
      }
    }
    return gram;
  }

  const Eigen::Index chunks = ChunkCount(n);
  std::vector<Matrix> partial(chunks);
#pragma omp parallel for schedule(static) num_threads(TeamSize(threads))
  for (Eigen::Index c = 0; c < chunks; ++c) {
    partial[c] = accumulate(c * kChunkColumns, std::min(n, (c + 1) * kChunkColumns));
  }
  for (const Matrix& p : partial) gram += p;
  return gram;
}

void AbsScores(const Matrix& x, const Vector& n, Vector& out, int threads) {
  const Eigen::Index cols = x.cols();
  out.resize(cols);
#pragma omp parallel for schedule(static) num_threads(TeamSize(threads))
  for (Eigen::Index j = 0; j < cols; ++j) {
    out[j] = std::abs(x.col(j).dot(n));
  }
}

std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold,
                         int threads) {
  const Eigen::Index cols = x.cols();
  std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) \
    num_threads(TeamSize(threads))
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Vector residual = x.col(j) - v * (v.transpose() * x.col(j));
    if (residual.norm() <= threshold) ++count;
  }
  return count;
}

}  // namespace omp

void Project(const Matrix& x, const Vector& b, Vector& out,
             const ExecutionPolicy& policy) {
  if (policy.parallel) {
    omp::Project(x, b, out, policy.threads);
  } else {
    serial::Project(x, b, out);
  }
}

double L1(const Matrix& x, const Vector& b, const ExecutionPolicy& policy) {
  return policy.parallel ? omp::L1(x, b, policy.reduction, policy.threads)
                         : serial::L1(x, b);
}

SignedSum SignedColumnSum(const Matrix& x, const Vector& projections,
                          const ExecutionPolicy& policy) {
  return policy.parallel
             ? omp::SignedColumnSum(x, projections, policy.reduction, policy.threads)
             : serial::SignedColumnSum(x, projections);
}

Matrix WeightedGram(const Matrix& x, const Vector& weights,
                    const ExecutionPolicy& policy) {
  return policy.parallel
             ? omp::WeightedGram(x, weights, policy.reduction, policy.threads)
             : serial::WeightedGram(x, weights);
}

void AbsScores(const Matrix& x, const Vector& n, Vector& out,
               const ExecutionPolicy& policy) {
  if (policy.parallel) {
    omp::AbsScores(x, n, out, policy.threads);
  } else {
    serial::AbsScores(x, n, out);
  }
}

std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold,
                         const ExecutionPolicy& policy) {
  return policy.parallel ? omp::CountWithin(x, v, threshold, policy.threads)
                         : serial::CountWithin(x, v, threshold);
}

}  // namespace kernels
}  // namespace dpcp
