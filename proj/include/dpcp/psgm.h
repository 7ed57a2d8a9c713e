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

// Projected sub-gradient method on the sphere:
//   b_k = b_{k-1} - mu_k X sign(X^T b_{k-1}),   b_k <- b_k / ||b_k||,
// with constant, harmonic, user-supplied diminishing, piecewise-geometric
// or line-search step sizes, and the sequential recovery of several normals.
// SolveReport and the trace format are shared with the other solvers.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/core.h"
#include "dpcp/kernels.h"

namespace dpcp {

enum class StepKind {
  kConstant,
  kHarmonic,
  kCustomDiminishing,
  kPiecewiseGeometric,
  kMbls,
};

const char* StepKindName(StepKind kind);

struct LineSearchParams {
  double shrink = 0.5;  // sigma
  double grow = 2.0;    // gamma
  int max_backtracks = 30;
  double armijo = 1e-4;
};

struct StepSchedule {
  StepKind kind = StepKind::kPiecewiseGeometric;
  double mu0 = 1e-2;
  double beta = 0.5;
  int K0 = 30;
  int K = 4;
  LineSearchParams line_search;
  // mu_k for k >= 1; only for kCustomDiminishing.
  std::function<double(int)> custom;

  static StepSchedule Constant(double mu);
  static StepSchedule Harmonic(double mu0);
  static StepSchedule CustomDiminishing(std::function<double(int)> sequence);
  static StepSchedule PiecewiseGeometric(double mu0, int K0 = 30, int K = 4, double beta = 0.5);
  static StepSchedule Mbls(double mu0, LineSearchParams params = {});

  void Validate() const;
};

// Stateless schedule value at iteration k >= 1. Throws for kMbls.
double StepSize(const StepSchedule& schedule, int k);

enum class Termination {
  kGradTol,
  kAngleTol,
  kMaxIters,
  kDegenerate,
  kObjectiveStall,
  kStepTol,  // successive iterates agree to the requested tolerance
};

const char* TerminationName(Termination termination);

struct SolveOptions {
  StepSchedule schedule;
  int max_iters = 1000;
  // Stop once the angle to the truth's complement is <= angle_tol; only
  // consulted when a truth model is passed to the solver.
  std::optional<double> angle_tol;
  double grad_tol = 1e-10;
  bool record_trace = true;
  std::uint64_t seed = 0;
  std::optional<ExecutionPolicy> policy;  // default: DefaultExecutionPolicy()
};

struct TraceRow {
  int k = 0;
  double objective = 0.0;
  double step = 0.0;
  // Angles to S-perp (theta) and S (phi); NaN without truth.
  double theta = 0.0;
  double phi = 0.0;
  std::int64_t wall_nanos = 0;
  bool non_monotone = false;
};

struct SolveReport {
  std::string method;
  UnitVector final_b;
  double final_objective = 0.0;
  double initial_objective = 0.0;
  double initial_theta = 0.0;  // NaN without truth
  int iters = 0;
  Termination termination = Termination::kMaxIters;
  std::vector<TraceRow> trace;
  // Configuration or numerical oddities worth surfacing (e.g. max_iters=0).
  std::vector<std::string> flags;
  int non_monotone_steps = 0;
  std::int64_t wall_nanos = 0;
};

SolveReport Solve(const Dataset& data, const UnitVector& b0, const SolveOptions& options,
                  const std::optional<SubspaceModel>& truth = std::nullopt);

// Same as Solve with options.schedule.kind forced to kMbls.
SolveReport SolveMbls(const Dataset& data, const UnitVector& b0, const SolveOptions& options,
                      const std::optional<SubspaceModel>& truth = std::nullopt);

// One backtracking line search from b: start at mu = 1 and halve until the
// Armijo test passes. Returns the accepted step (the smallest tried if
// none passes).
double BacktrackingInitialStep(const Dataset& data, const UnitVector& b,
                               const LineSearchParams& params = {}, int max_halvings = 60);

// Finds `codim` normals one at a time, each from the spectral point of the
// data projected onto the complement of the normals already found.
SubspaceModel RecoverNormals(const Dataset& data, int codim, const SolveOptions& options);

// CSV with header k,objective,step,theta,phi,wall_nanos.
void WriteTraceCsv(const SolveReport& report, std::ostream& out);

}  // namespace dpcp
