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

// Dense two-phase bounded-variable primal simplex for
//
//   min c^T x   s.t.  A x = b,  lower <= x <= upper   (bounds may be +-inf).
//
// Variables are shifted/negated/split so every working variable lies in
// [0, u] with u possibly infinite; finite upper bounds are handled by the
// upper-bounding technique instead of extra rows, so the working tableau is
// m x (n + m). Pricing is Dantzig's rule; after a run of degenerate pivots
// the solver switches to Bland's rule, which cannot cycle.
//
// Every optimal result carries a dual certificate: equality multipliers y
// and the Lagrangian bound b^T y + sum_j min_{x_j in bounds} (c - A^T y)_j x_j,
// which is a valid lower bound on the optimum for any y.

#include "dpcp/core.h"

namespace dpcp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* LpStatusName(LpStatus status);

enum class LpPricing { kDantzigWithBlandFallback, kBland };

struct LpProblem {
  Vector c;
  Matrix A_eq;
  Vector b_eq;
  Vector lower;  // -inf allowed
  Vector upper;  // +inf allowed
};

struct LpOptions {
  LpPricing pricing = LpPricing::kDantzigWithBlandFallback;
  int max_iterations = 100000;
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  // Consecutive degenerate pivots before Bland's rule takes over.
  int degenerate_switch = 50;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  double objective = 0.0;
  Vector duals;           // multipliers of A x = b
  Vector reduced_costs;   // c - A^T y
  double dual_bound = 0.0;
  double primal_residual = 0.0;  // max(|A x - b|_inf, bound violation)
  int iterations = 0;
};

LpResult LpSolve(const LpProblem& problem, const LpOptions& options = {});

}  // namespace dpcp
