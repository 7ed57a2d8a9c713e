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

// Geometric quantities that govern DPCP, their numerical estimation on a
// labeled dataset, and evaluators for every closed-form success condition.
//
// Estimation is one-sided by construction: a minimum is estimated by the
// best value found, which can only overshoot the true minimum; a maximum
// likewise undershoots. Reports carry this flag so a caller knows whether a
// condition evaluated on estimates is optimistic or pessimistic.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/core.h"

namespace dpcp {

// Average height of the unit hemisphere of R^d:
//   c_1 = 1, c_2 = 2/pi, c_{d+1} = (2/pi) / (d c_d).
double CdConstant(int d);

struct EstimatorOptions {
  // Objective evaluations spent per quantity; half on random probes, half
  // on local-search restarts.
  std::int64_t budget = 4000;
  std::uint64_t seed = 0;
  // Iterations (= evaluations) per restart. Fixed so that a larger budget
  // only adds restarts, keeping estimates nested.
  int restart_iters = 100;
};

struct EstimatorInfo {
  std::int64_t budget = 0;
  std::uint64_t seed = 0;
  bool one_sided = true;
};

struct GeometryStats {
  double c_X_min = 0.0;
  double c_X_max = 0.0;
  double c_O_min = 0.0;
  double c_O_max = 0.0;
  double eta_O = 0.0;
  double eta_X = 0.0;
  double eta_O_bar = 0.0;
  Eigen::Index N = 0;
  Eigen::Index M = 0;
  Eigen::Index D = 0;
  Eigen::Index d = 0;
  EstimatorInfo estimator;
};

GeometryStats EstimateStats(const Dataset& data, const SubspaceModel& truth,
                            const EstimatorOptions& options = {});

// Building blocks, exposed for testing. `y` holds one point per column;
// `alpha` ranges over the unit sphere of R^{y.rows()}.
double AverageAbsProjection(const Matrix& y, const Vector& alpha);
// (1/L) ||(I - a a^T) Y sign(Y^T a)||_2.
double AverageTangentialSignedSum(const Matrix& y, const Vector& alpha);

struct ConditionReport {
  std::string name;
  bool satisfied = false;
  // True when the inequality is undefined (e.g. a denominator vanishes);
  // such a report is never satisfied.
  bool vacuous = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::map<std::string, double> inputs;
  std::optional<EstimatorInfo> estimator;
  std::map<std::string, double> extras;
  std::vector<ConditionReport> sub_conditions;
  std::string note;
};

// (M/N) sqrt(eta_bar^2 + (c_O_max - c_O_min)^2) / c_X_min < 1.
ConditionReport CheckGlobalOptimality(const GeometryStats& stats);

struct AlpAngles {
  double phi_natural = 0.0;  // one ALP step lands on a normal beyond this
  double phi_star = 0.0;     // ALP converges in finitely many steps beyond this
  bool vacuous = false;      // N c_X_min <= M eta_bar: angles undefined
  bool clamped = false;      // arccos argument left [0, 1] and was clamped
};

AlpAngles ComputeAlpAngles(const GeometryStats& stats);

// Compares an initial angle phi0 (from S) against both ALP thresholds.
// sub_conditions[0] is the one-step test, sub_conditions[1] the
// finite-convergence test.
ConditionReport CheckAlpConditions(const GeometryStats& stats, double phi0);

// theta0 < arctan(N c_X_min / (N eta_X + M eta_O)) and
// N c_X_min >= N eta_X + M eta_O; extras carry mu_prime.
ConditionReport CheckPsgmPreconditions(const GeometryStats& stats, double theta0);

// 1 / (4 max(N c_X_min, M c_O_max)).
double MuPrime(const GeometryStats& stats);

enum class RandomBoundMode {
  kBase,             // t as given
  kHighDimensional,  // t -> sqrt(t d)
  kLargeScale,       // t -> sqrt(t N^alpha)
};

struct RandomBoundParams {
  Eigen::Index N = 0;
  Eigen::Index M = 0;
  int D = 2;
  int d = 1;
  double t = 1.0;
  double C0 = 1.0;
  RandomBoundMode mode = RandomBoundMode::kBase;
  double alpha = 0.5;  // only for kLargeScale
};

// (4+s)^2 M + C0 (sqrt(D) log D + s)^2 M <= (c_d N - (2 + s/2) sqrt(N))^2
// with s the mode-adjusted t. Throws InvalidArgument when t is outside the
// admissible range of the chosen mode.
ConditionReport CheckRandomModelBound(const RandomBoundParams& params);

// Spectral initialization + PSGM: the ratio of outlier spectral spread to
// the inlier gap must stay below (N c_X_min / (N eta_X + M eta_O))^2.
ConditionReport CheckSpectralPsgm(const GeometryStats& stats,
                                  const Dataset& data);

// Random-model version of the spectral+PSGM guarantee with caller-supplied
// universal constants C0, C1, C2.
struct SpectralRandomParams {
  Eigen::Index N = 0;
  Eigen::Index M = 0;
  int D = 2;
  int d = 1;
  double t = 1.0;
  double C0 = 1.0;
  double C1 = 1.0;
  double C2 = 1.0;
};
ConditionReport CheckSpectralPsgmRandomModel(const SpectralRandomParams& params);

}  // namespace dpcp
