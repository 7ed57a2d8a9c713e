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

// Alternatives to the sub-gradient method for the same problem:
//
//  * ALP (alternating linearization and projection): replace the sphere by
//    the tangent plane {b : w^T b = 1} at the current point w, solve the
//    resulting l1 problem exactly as a linear program, re-normalize.
//  * IRLS: repeated bottom-eigenvector solves of X diag(w) X^T with damped
//    inverse-residual weights w_j = 1 / max(|x_j^T b|, delta).

#include <optional>
#include <vector>

#include "dpcp/core.h"
#include "dpcp/kernels.h"
#include "dpcp/lp.h"
#include "dpcp/psgm.h"

namespace dpcp {

// Which LP encodes one ALP step.
enum class AlpFormulation {
  // max lambda  s.t.  X y = lambda w,  -1 <= y <= 1. D rows, L + 1
  // variables; the step's b is the equality multiplier vector.
  kDual,
  // min 1^T (p + q)  s.t.  X^T b = p - q,  w^T b = 1,  p, q >= 0, b free.
  // L + 1 rows; practical for small L only.
  kPrimal,
};

struct AlpStepOptions {
  AlpFormulation formulation = AlpFormulation::kDual;
  LpOptions lp;
};

struct AlpStepResult {
  UnitVector b_hat;
  Vector b;                  // LP minimizer before normalization
  double lp_objective = 0.0; // ||X^T b||_1
  double dual_bound = 0.0;   // certified lower bound on lp_objective
  double constraint_residual = 0.0;  // |w^T b - 1|
  int lp_iterations = 0;
};

AlpStepResult AlpStep(const Dataset& data, const UnitVector& b_prev,
                      const AlpStepOptions& options = {});

struct AlpSolveOptions {
  int max_iters = 10;
  double stall_tolerance = 1e-12;
  std::optional<double> angle_tol;
  AlpStepOptions step;
};

struct AlpSolveReport {
  SolveReport report;
  std::vector<AlpStepResult> steps;
  // f(b_hat_0), f(b_hat_1), ...: the chain that must not increase.
  std::vector<double> objective_chain;
};

AlpSolveReport AlpSolve(const Dataset& data, const UnitVector& b0,
                        const AlpSolveOptions& options = {},
                        const std::optional<SubspaceModel>& truth = std::nullopt);

struct IrlsOptions {
  double delta = 1e-10;
  int max_iters = 100;
  double tol = 1e-14;  // stop when 1 - |b_k^T b_{k-1}| <= tol
  bool record_trace = true;
  std::optional<ExecutionPolicy> policy;
};

struct IrlsReport {
  SolveReport report;
  // sum_j h_delta(x_j^T b) with h_delta(r) = |r| for |r| >= delta and
  // r^2/(2 delta) + delta/2 below: the majorized objective, non-increasing.
  std::vector<double> damped_objective;
};

IrlsReport IrlsSolve(const Dataset& data, const UnitVector& b0, const IrlsOptions& options = {},
                     const std::optional<SubspaceModel>& truth = std::nullopt);

double DampedObjective(const Dataset& data, const Vector& b, double delta);

}  // namespace dpcp
