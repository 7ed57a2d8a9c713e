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

// Initial points for the sphere-constrained solvers.

#include <cstdint>
#include <utility>

#include "dpcp/core.h"
#include "dpcp/kernels.h"

namespace dpcp {

// Uniform on S^{D-1}, drawn from the init stream of `seed`.
UnitVector RandomInit(int D, std::uint64_t seed);

struct EigenResult {
  Vector vector;           // unit norm, first significant entry positive
  double eigenvalue = 0.0;
  double residual = 0.0;   // ||A v - lambda v||
  int iterations = 0;      // 0 for the dense path
};

// Smallest eigenpair of a symmetric positive semi-definite matrix. Dense
// symmetric eigendecomposition up to kDenseEigenLimit, inverse power
// iteration (shift 0) above it.
inline constexpr Eigen::Index kDenseEigenLimit = 256;
EigenResult BottomEigenpair(const Matrix& symmetric, double tolerance = 1e-10,
                            int max_iters = 1000);
// The inverse-iteration path, exposed so tests can compare it with the
// dense path on small matrices.
EigenResult BottomEigenpairInverseIteration(const Matrix& symmetric,
                                            double tolerance = 1e-10,
                                            int max_iters = 1000);

// Bottom eigenvector of X X^T. Throws on an empty dataset.
UnitVector SpectralInit(const Dataset& data,
                        const ExecutionPolicy& policy = DefaultExecutionPolicy());
EigenResult SpectralInitDetailed(const Dataset& data,
                                 const ExecutionPolicy& policy = DefaultExecutionPolicy());

// E[sin theta0] for b uniform on S^{D-1} and a d-dimensional S:
//   B((d+1)/2, (D-d)/2) / B(d/2, (D-d)/2).
double ExpectedSinTheta0(int d, int D);
// Lower and upper brackets sqrt((d - 1/2)/D) and sqrt(d/(D - 1/2)).
std::pair<double, double> ExpectedSinTheta0Bracket(int d, int D);

// sqrt(sigma_1^2(O) - sigma_D^2(O)) / sigma_d(X) for labeled data.
double SpectralAngleBound(const Dataset& data, Eigen::Index d);

}  // namespace dpcp
