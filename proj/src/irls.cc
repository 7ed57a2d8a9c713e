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

#include <chrono>
#include <cmath>
#include <limits>

#include "dpcp/altsolvers.h"
#include "dpcp/init.h"

namespace dpcp {

double DampedObjective(const Dataset& data, const Vector& b, double delta) {
  if (data.empty()) return 0.0;
  const Vector r = data.columns().transpose() * b;
  double total = 0.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    const double a = std::abs(r[j]);
    total += a >= delta ? a : a * a / (2.0 * delta) + delta / 2.0;
  }
  return total;
}

IrlsReport IrlsSolve(const Dataset& data, const UnitVector& b0, const IrlsOptions& options,
                     const std::optional<SubspaceModel>& truth) {
  if (!(options.delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (options.max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (!(options.tol >= 0.0)) throw InvalidArgument("tol must be non-negative");
  if (!data.empty() && data.dim() != b0.dim()) throw InvalidArgument("dimension mismatch");
  const ExecutionPolicy policy = options.policy.value_or(DefaultExecutionPolicy());
  const auto start = std::chrono::steady_clock::now();
  auto nanos = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start).count();
  };
  std::optional<SubspaceModel> model;
  if (truth) model = truth->Completed();

  IrlsReport out{.report = SolveReport{.method = "irls", .final_b = b0}};
  SolveReport& report = out.report;
  report.initial_objective = Objective(data, b0);
  report.initial_theta = model ? PrincipalAngle(*model, b0).theta_from_complement
                               : std::numeric_limits<double>::quiet_NaN();
  out.damped_objective.push_back(DampedObjective(data, b0.vec(), options.delta));
  if (options.max_iters == 0) report.flags.push_back("max_iters=0: returned the initial point");
  if (data.empty()) {
    report.flags.push_back("empty dataset: every point is optimal");
    return out;
  }

  const Matrix& x = data.columns();
  Vector b = b0.vec();
  Vector residuals;
  for (int k = 1; k <= options.max_iters; ++k) {
    kernels::AbsScores(x, b, residuals, policy);
    const Vector weights = residuals.unaryExpr(
        [&](double r) { return 1.0 / std::max(r, options.delta); });
    const Matrix gram = kernels::WeightedGram(x, weights, policy);
    const EigenResult eig = BottomEigenpair(gram);
    if (!eig.vector.allFinite()) throw RuntimeError("IRLS eigen-solve failed");
    Vector next = eig.vector.normalized();
    if (next.dot(b) < 0.0) next = -next;
    const double change = 1.0 - std::abs(next.dot(b));
    b = next;
    report.iters = k;
    out.damped_objective.push_back(DampedObjective(data, b, options.delta));
    if (options.record_trace) {
      double theta = std::numeric_limits<double>::quiet_NaN();
      double phi = theta;
      if (model) {
        const AngleReading r = PrincipalAngle(*model, UnitVector(b, 1e-10));
        theta = r.theta_from_complement;
        phi = r.phi_from_S;
      }
      report.trace.push_back({k, kernels::L1(x, b, policy), 0.0, theta, phi, nanos()});
    }
    if (change <= options.tol) {
      report.termination = Termination::kStepTol;
      break;
    }
    report.termination = Termination::kMaxIters;
  }
  report.final_b = UnitVector(b, 1e-10);
  report.final_objective = kernels::L1(x, b, policy);
  report.wall_nanos = nanos();
  return out;
}

}  // namespace dpcp
