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

namespace dpcp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AlpStepResult FromDirection(const Dataset& data, const Vector& b, const LpResult& lp,
                            const Vector& w) {
  const double norm = b.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw RuntimeError("ALP step produced a zero or non-finite direction");
  }
  AlpStepResult result{.b_hat = UnitVector(b / norm, 1e-10), .b = b};
  result.lp_objective = data.empty() ? 0.0 : (data.columns().transpose() * b).cwiseAbs().sum();
  result.constraint_residual = std::abs(w.dot(b) - 1.0);
  result.lp_iterations = lp.iterations;
  return result;
}

AlpStepResult DualStep(const Dataset& data, const Vector& w, const LpOptions& options) {
  const Eigen::Index dim = w.size();
  const Eigen::Index count = data.size();
  LpProblem lp;
  lp.A_eq.resize(dim, count + 1);
  if (count > 0) lp.A_eq.leftCols(count) = data.columns();
  lp.A_eq.col(count) = -w;
  lp.b_eq = Vector::Zero(dim);
  lp.c = Vector::Zero(count + 1);
  lp.c[count] = -1.0;
  lp.lower = Vector::Constant(count + 1, -1.0);
  lp.upper = Vector::Constant(count + 1, 1.0);
  lp.lower[count] = -kInf;
  lp.upper[count] = kInf;
  const LpResult solved = LpSolve(lp, options);
  if (solved.status == LpStatus::kUnbounded) {
    throw RuntimeError("ALP dual LP unbounded: the tangent-plane problem is infeasible");
  }
  if (solved.status != LpStatus::kOptimal) {
    throw RuntimeError(std::string("ALP dual LP ended with status ") + LpStatusName(solved.status));
  }
  // The multipliers of X y - lambda w = 0 solve the primal step.
  AlpStepResult result = FromDirection(data, solved.duals, solved, w);
  result.dual_bound = -solved.objective;  // lambda*: the primal optimum
  return result;
}

AlpStepResult PrimalStep(const Dataset& data, const Vector& w, const LpOptions& options) {
  const Eigen::Index dim = w.size();
  const Eigen::Index count = data.size();
  // Variables: [b (dim, free) | p (count) | q (count)].
  const Eigen::Index n = dim + 2 * count;
  LpProblem lp;
  lp.A_eq = Matrix::Zero(count + 1, n);
  if (count > 0) {
    lp.A_eq.topLeftCorner(count, dim) = data.columns().transpose();
    lp.A_eq.block(0, dim, count, count) = -Matrix::Identity(count, count);
    lp.A_eq.block(0, dim + count, count, count) = Matrix::Identity(count, count);
  }
  lp.A_eq.block(count, 0, 1, dim) = w.transpose();
  lp.b_eq = Vector::Zero(count + 1);
  lp.b_eq[count] = 1.0;
  lp.c = Vector::Zero(n);
  lp.c.tail(2 * count).setOnes();
  lp.lower = Vector::Zero(n);
  lp.upper = Vector::Constant(n, kInf);
  lp.lower.head(dim).setConstant(-kInf);
  const LpResult solved = LpSolve(lp, options);
  if (solved.status == LpStatus::kUnbounded) {
    throw RuntimeError("ALP primal LP unbounded: data is rank deficient in a bad way");
  }
  if (solved.status != LpStatus::kOptimal) {
    throw RuntimeError(std::string("ALP primal LP ended with status ") + LpStatusName(solved.status));
  }
  AlpStepResult result = FromDirection(data, solved.x.head(dim), solved, w);
  result.dual_bound = solved.dual_bound;
  return result;
}

}  // namespace

AlpStepResult AlpStep(const Dataset& data, const UnitVector& b_prev,
                      const AlpStepOptions& options) {
  if (!data.empty() && data.dim() != b_prev.dim()) {
    throw InvalidArgument("dimension mismatch between dataset and point");
  }
  return options.formulation == AlpFormulation::kDual
             ? DualStep(data, b_prev.vec(), options.lp)
             : PrimalStep(data, b_prev.vec(), options.lp);
}

AlpSolveReport AlpSolve(const Dataset& data, const UnitVector& b0,
                        const AlpSolveOptions& options,
                        const std::optional<SubspaceModel>& truth) {
  if (options.max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  auto nanos = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start).count();
  };
  std::optional<SubspaceModel> model;
  if (truth) model = truth->Completed();
  auto angles = [&](const UnitVector& b) -> std::pair<double, double> {
    if (!model) return {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN()};
    const AngleReading r = PrincipalAngle(*model, b);
    return {r.theta_from_complement, r.phi_from_S};
  };

  AlpSolveReport out{.report = SolveReport{.method = "alp", .final_b = b0}};
  SolveReport& report = out.report;
  double f = Objective(data, b0);
  report.initial_objective = f;
  report.initial_theta = angles(b0).first;
  out.objective_chain.push_back(f);
  if (options.max_iters == 0) report.flags.push_back("max_iters=0: returned the initial point");

  UnitVector current = b0;
  for (int k = 1; k <= options.max_iters; ++k) {
    AlpStepResult step = AlpStep(data, current, options.step);
    const double next_f = Objective(data, step.b_hat);
    report.iters = k;
    const auto [theta, phi] = angles(step.b_hat);
    report.trace.push_back({k, next_f, 0.0, theta, phi, nanos()});
    out.objective_chain.push_back(next_f);
    const double decrease = f - next_f;
    current = step.b_hat;
    f = next_f;
    out.steps.push_back(std::move(step));
    if (decrease < options.stall_tolerance) {
      report.termination = Termination::kObjectiveStall;
      break;
    }
    if (model && options.angle_tol && theta <= *options.angle_tol) {
      report.termination = Termination::kAngleTol;
      break;
    }
    report.termination = Termination::kMaxIters;
  }
  report.final_b = current;
  report.final_objective = f;
  report.wall_nanos = nanos();
  return out;
}

}  // namespace dpcp
