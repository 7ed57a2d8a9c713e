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

#include "dpcp/psgm.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "dpcp/init.h"

namespace dpcp {

const char* StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kConstant:
      return "constant";
    case StepKind::kHarmonic:
      return "harmonic";
    case StepKind::kCustomDiminishing:
      return "custom_diminishing";
    case StepKind::kPiecewiseGeometric:
      return "piecewise_geometric";
    case StepKind::kMbls:
      return "mbls";
  }
  return "unknown";
}

const char* TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kGradTol:
      return "grad_tol";
    case Termination::kAngleTol:
      return "angle_tol";
    case Termination::kMaxIters:
      return "max_iters";
    case Termination::kDegenerate:
      return "degenerate";
    case Termination::kObjectiveStall:
      return "objective_stall";
    case Termination::kStepTol:
      return "step_tol";
  }
  return "unknown";
}

StepSchedule StepSchedule::Constant(double mu) {
  StepSchedule s;
  s.kind = StepKind::kConstant;
  s.mu0 = mu;
  return s;
}

StepSchedule StepSchedule::Harmonic(double mu0) {
  StepSchedule s;
  s.kind = StepKind::kHarmonic;
  s.mu0 = mu0;
  return s;
}

StepSchedule StepSchedule::CustomDiminishing(std::function<double(int)> sequence) {
  StepSchedule s;
  s.kind = StepKind::kCustomDiminishing;
  s.custom = std::move(sequence);
  return s;
}

StepSchedule StepSchedule::PiecewiseGeometric(double mu0, int K0, int K, double beta) {
  StepSchedule s;
  s.kind = StepKind::kPiecewiseGeometric;
  s.mu0 = mu0;
  s.K0 = K0;
  s.K = K;
  s.beta = beta;
  return s;
}

StepSchedule StepSchedule::Mbls(double mu0, LineSearchParams params) {
  StepSchedule s;
  s.kind = StepKind::kMbls;
  s.mu0 = mu0;
  s.line_search = params;
  return s;
}

void StepSchedule::Validate() const {
  if (kind == StepKind::kCustomDiminishing) {
    if (!custom) throw InvalidArgument("custom schedule needs a sequence");
    return;
  }
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) throw InvalidArgument("mu0 must be positive");
  if (kind == StepKind::kPiecewiseGeometric) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
    if (K0 < 1 || K < 1) throw InvalidArgument("K0 and K must be >= 1");
  }
  if (kind == StepKind::kMbls) {
    const auto& ls = line_search;
    if (!(ls.shrink > 0.0 && ls.shrink < 1.0)) throw InvalidArgument("shrink must lie in (0, 1)");
    if (!(ls.grow >= 1.0)) throw InvalidArgument("grow must be >= 1");
    if (ls.max_backtracks < 0) throw InvalidArgument("max_backtracks must be >= 0");
    if (!(ls.armijo >= 0.0)) throw InvalidArgument("armijo constant must be >= 0");
  }
}

double StepSize(const StepSchedule& schedule, int k) {
  if (k < 1) throw InvalidArgument("iteration index must be >= 1");
  schedule.Validate();
  switch (schedule.kind) {
    case StepKind::kConstant:
      return schedule.mu0;
    case StepKind::kHarmonic:
      return schedule.mu0 / k;
    case StepKind::kCustomDiminishing: {
      const double mu = schedule.custom(k);
      if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("custom step must be positive");
      return mu;
    }
    case StepKind::kPiecewiseGeometric:
      if (k < schedule.K0) return schedule.mu0;
      return schedule.mu0 * std::pow(schedule.beta, (k - schedule.K0) / schedule.K + 1);
    case StepKind::kMbls:
      break;
  }
  throw InvalidArgument("line-search steps depend on the iterate; no stateless value");
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t NanosSince(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

// Keeps X^T b, X sign(X^T b) and f(b) in sync for the current iterate.
class IterateState {
 public:
  IterateState(const Matrix& x, const ExecutionPolicy& policy) : x_(x), policy_(policy) {}

  void Set(const Vector& b) {
    b_ = b;
    if (x_.cols() == 0) {
      sum_ = SignedSum{Vector::Zero(b.size()), 0.0};
      return;
    }
    kernels::Project(x_, b_, projections_, policy_);
    sum_ = kernels::SignedColumnSum(x_, projections_, policy_);
  }

  double Evaluate(const Vector& b) const {
    return x_.cols() == 0 ? 0.0 : kernels::L1(x_, b, policy_);
  }

  const Vector& b() const { return b_; }
  const Vector& gradient() const { return sum_.sum; }
  double objective() const { return sum_.l1; }

 private:
  const Matrix& x_;
  ExecutionPolicy policy_;
  Vector b_;
  Vector projections_;
  SignedSum sum_;
};

struct Angles {
  double theta = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
};

Angles AnglesOf(const std::optional<SubspaceModel>& truth, const Vector& b) {
  if (!truth) return {};
  const AngleReading reading = PrincipalAngle(*truth, UnitVector(b, 1e-10));
  return {reading.theta_from_complement, reading.phi_from_S};
}

// Candidate step for the modified backtracking line search. Returns the
// accepted step and whether Armijo held.
std::pair<double, bool> LineSearch(const IterateState& state, double mu_prev,
                                   const LineSearchParams& ls, double tangent_sq) {
  const Vector& b = state.b();
  const Vector& g = state.gradient();
  const double f = state.objective();
  auto accepted = [&](double mu) {
    const Vector trial = b - mu * g;
    const double norm = trial.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return false;
    return state.Evaluate(trial / norm) <= f - ls.armijo * mu * tangent_sq;
  };
  double mu = mu_prev * ls.grow;
  if (accepted(mu)) return {mu, true};
  mu = mu_prev;
  for (int i = 0; i <= ls.max_backtracks; ++i) {
    if (accepted(mu)) return {mu, true};
    if (i < ls.max_backtracks) mu *= ls.shrink;
  }
  return {mu, false};
}

}  // namespace

SolveReport Solve(const Dataset& data, const UnitVector& b0, const SolveOptions& options,
                  const std::optional<SubspaceModel>& truth) {
  if (!data.empty() && data.dim() != b0.dim()) {
    throw InvalidArgument("dimension mismatch between dataset and initial point");
  }
  if (options.max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (!(options.grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (options.angle_tol && !(*options.angle_tol > 0.0)) {
    throw InvalidArgument("angle_tol must be positive");
  }
  const StepSchedule& schedule = options.schedule;
  schedule.Validate();
  std::optional<SubspaceModel> model;
  if (truth) {
    model = truth->Completed();
    if (model->ambient_dim() != b0.dim()) throw InvalidArgument("truth dimension mismatch");
  }

  const ExecutionPolicy policy = options.policy.value_or(DefaultExecutionPolicy());
  const bool mbls = schedule.kind == StepKind::kMbls;
  const auto start = Clock::now();

  IterateState state(data.columns(), policy);
  state.Set(b0.vec());

  SolveReport report{.method = mbls ? "psgm-mbls" : "psgm", .final_b = b0};
  report.initial_objective = state.objective();
  report.initial_theta = AnglesOf(model, b0.vec()).theta;
  if (options.max_iters == 0) report.flags.push_back("max_iters=0: returned the initial point");
  if (mbls && schedule.line_search.max_backtracks == 0) {
    report.flags.push_back("max_backtracks=0: line search cannot shrink the step");
  }
  if (options.record_trace) report.trace.reserve(options.max_iters);

  double mu_prev = schedule.mu0;
  for (int k = 1; k <= options.max_iters; ++k) {
    const Vector& b = state.b();
    const Vector& g = state.gradient();
    const Vector tangent = g - b * b.dot(g);
    const double tangent_norm = tangent.norm();
    report.iters = k;

    if (tangent_norm <= options.grad_tol) {
      if (options.record_trace) {
        const Angles a = AnglesOf(model, b);
        report.trace.push_back({k, state.objective(), 0.0, a.theta, a.phi, NanosSince(start)});
      }
      report.termination = Termination::kGradTol;
      break;
    }

    double mu = 0.0;
    bool non_monotone = false;
    if (mbls) {
      const auto [accepted_mu, ok] = LineSearch(state, mu_prev, schedule.line_search,
                                                tangent_norm * tangent_norm);
      mu = accepted_mu;
      non_monotone = !ok;
      mu_prev = mu;
    } else {
      mu = StepSize(schedule, k);
    }

    const Vector next = b - mu * g;
    const double norm = next.norm();
    if (!(norm > 1e-300) || !std::isfinite(norm)) {
      report.termination = Termination::kDegenerate;
      report.flags.push_back("degenerate update: b - mu g vanished at k=" + std::to_string(k));
      break;
    }
    state.Set(next / norm);
    if (non_monotone) ++report.non_monotone_steps;

    const Angles a = AnglesOf(model, state.b());
    if (options.record_trace) {
      report.trace.push_back({k, state.objective(), mu, a.theta, a.phi, NanosSince(start),
                              non_monotone});
    }
    if (model && options.angle_tol && a.theta <= *options.angle_tol) {
      report.termination = Termination::kAngleTol;
      break;
    }
    if (k == options.max_iters) report.termination = Termination::kMaxIters;
  }

  report.final_b = UnitVector(state.b(), 1e-12);
  report.final_objective = state.objective();
  report.wall_nanos = NanosSince(start);
  return report;
}

SolveReport SolveMbls(const Dataset& data, const UnitVector& b0, const SolveOptions& options,
                      const std::optional<SubspaceModel>& truth) {
  SolveOptions adjusted = options;
  adjusted.schedule.kind = StepKind::kMbls;
  return Solve(data, b0, adjusted, truth);
}

double BacktrackingInitialStep(const Dataset& data, const UnitVector& b,
                               const LineSearchParams& params, int max_halvings) {
  if (max_halvings < 0) throw InvalidArgument("max_halvings must be >= 0");
  if (data.empty()) return 1.0;
  if (data.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  const Matrix& x = data.columns();
  const Vector p = x.transpose() * b.vec();
  const Vector g = x * SignVecReal(p);
  const double f = p.cwiseAbs().sum();
  const Vector tangent = g - b.vec() * b.vec().dot(g);
  const double tangent_sq = tangent.squaredNorm();
  double mu = 1.0;
  for (int i = 0; i <= max_halvings; ++i) {
    const Vector trial = b.vec() - mu * g;
    const double norm = trial.norm();
    if (norm > 0.0 && (x.transpose() * (trial / norm)).cwiseAbs().sum() <=
                          f - params.armijo * mu * tangent_sq) {
      return mu;
    }
    if (i < max_halvings) mu *= 0.5;
  }
  return mu;
}

SubspaceModel RecoverNormals(const Dataset& data, int codim, const SolveOptions& options) {
  if (data.empty()) throw InvalidArgument("cannot recover normals from an empty dataset");
  const Eigen::Index dim = data.dim();
  if (codim < 1 || codim > dim - 1) throw InvalidArgument("need 1 <= codim <= D - 1");
  const ExecutionPolicy policy = options.policy.value_or(DefaultExecutionPolicy());

  Matrix normals(dim, 0);
  Matrix reduced_basis = Matrix::Identity(dim, dim);  // Q: columns span the search space
  for (int j = 0; j < codim; ++j) {
    const Matrix projected = reduced_basis.transpose() * data.columns();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < projected.cols(); ++c) {
      if (projected.col(c).norm() >= 1e-9) keep.push_back(c);
    }
    if (keep.empty()) {
      throw RuntimeError("all columns annihilated after " + std::to_string(j) + " normals");
    }
    Matrix reduced(projected.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      reduced.col(static_cast<Eigen::Index>(c)) = projected.col(keep[c]).normalized();
    }
    const Dataset reduced_data(std::move(reduced));
    const UnitVector start = SpectralInit(reduced_data, policy);
    const SolveReport report = Solve(reduced_data, start, options);
    const Vector normal = reduced_basis * report.final_b.vec();

    Matrix grown(dim, normals.cols() + 1);
    grown << normals, normal.normalized();
    normals = std::move(grown);
    // Q <- Q * complement(b) keeps Q orthonormal and orthogonal to every
    // normal found so far.
    reduced_basis = reduced_basis * OrthonormalComplement(report.final_b.vec());
  }
  // One modified Gram-Schmidt pass absorbs accumulated rounding without
  // changing the orientation of any normal.
  for (Eigen::Index j = 0; j < normals.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      normals.col(j) -= normals.col(i) * normals.col(i).dot(normals.col(j));
    }
    const double norm = normals.col(j).norm();
    if (!(norm > 0.5)) throw RuntimeError("recovered normals are linearly dependent");
    normals.col(j) /= norm;
  }
  return SubspaceModel::FromNormals(normals);
}

void WriteTraceCsv(const SolveReport& report, std::ostream& out) {
  out << "k,objective,step,theta,phi,wall_nanos\n";
  out.precision(17);
  for (const TraceRow& row : report.trace) {
    out << row.k << ',' << row.objective << ',' << row.step << ',' << row.theta << ','
        << row.phi << ',' << row.wall_nanos << '\n';
  }
}

}  // namespace dpcp
