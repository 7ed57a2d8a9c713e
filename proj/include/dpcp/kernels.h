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

// Data-parallel inner loops of every solver. Each kernel exists twice: a
// plain serial reference (namespace serial) kept for testing, and an OpenMP
// version (namespace omp). Dispatch goes through ExecutionPolicy.
//
// Reductions in omp:: have two modes. Deterministic mode splits the columns
// into fixed chunks of kChunkColumns, reduces each chunk serially and then
// adds the chunk partials in chunk order, so results are bit-identical for
// any thread count. Fast mode lets OpenMP reduce per-thread partials, whose
// order (and rounding) depends on the team size.

#include <cstdint>

#include "dpcp/core.h"

namespace dpcp {

enum class ReductionMode { kDeterministic, kFast };

struct ExecutionPolicy {
  bool parallel = true;
  ReductionMode reduction = ReductionMode::kDeterministic;
  int threads = 0;  // 0: OpenMP default.

  static ExecutionPolicy Serial() { return {false, ReductionMode::kDeterministic, 1}; }
};

// Process-wide default used when callers do not pass a policy explicitly.
ExecutionPolicy DefaultExecutionPolicy();
void SetDefaultExecutionPolicy(const ExecutionPolicy& policy);

// Result of one pass of the sub-gradient kernel.
struct SignedSum {
  Vector sum;        // X sign(X^T b)
  double l1 = 0.0;   // ||X^T b||_1
};

namespace kernels {

inline constexpr Eigen::Index kChunkColumns = 256;

namespace serial {
// out_j = x_j^T b
void Project(const Matrix& x, const Vector& b, Vector& out);
// ||X^T b||_1
double L1(const Matrix& x, const Vector& b);
// X sign(p) and ||p||_1, given p = X^T b.
SignedSum SignedColumnSum(const Matrix& x, const Vector& projections);
// X diag(w) X^T
Matrix WeightedGram(const Matrix& x, const Vector& weights);
// out_j = |n^T x_j|
void AbsScores(const Matrix& x, const Vector& n, Vector& out);
// #{j : dist(x_j, span(v)) <= threshold}, v orthonormal.
std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold);
}  // namespace serial

namespace omp {
void Project(const Matrix& x, const Vector& b, Vector& out, int threads = 0);
double L1(const Matrix& x, const Vector& b, ReductionMode mode, int threads = 0);
SignedSum SignedColumnSum(const Matrix& x, const Vector& projections,
                          ReductionMode mode, int threads = 0);
Matrix WeightedGram(const Matrix& x, const Vector& weights, ReductionMode mode,
                    int threads = 0);
void AbsScores(const Matrix& x, const Vector& n, Vector& out, int threads = 0);
std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold,
                         int threads = 0);
}  // namespace omp

// Policy dispatch.
void Project(const Matrix& x, const Vector& b, Vector& out,
             const ExecutionPolicy& policy);
double L1(const Matrix& x, const Vector& b, const ExecutionPolicy& policy);
SignedSum SignedColumnSum(const Matrix& x, const Vector& projections,
                          const ExecutionPolicy& policy);
Matrix WeightedGram(const Matrix& x, const Vector& weights,
                    const ExecutionPolicy& policy);
void AbsScores(const Matrix& x, const Vector& n, Vector& out,
               const ExecutionPolicy& policy);
std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold,
                         const ExecutionPolicy& policy);

}  // namespace kernels
}  // namespace dpcp
