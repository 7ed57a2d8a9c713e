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

// Metrics and experiment harnesses.
//
// Classification metrics treat outliers as the positive class: a point is
// predicted outlier when its distance score is large.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/altsolvers.h"
#include "dpcp/core.h"
#include "dpcp/psgm.h"
#include "dpcp/quantities.h"

namespace dpcp {

struct RocCurve {
  // Descending; the first threshold is +inf (nothing predicted outlier).
  // A point is predicted outlier when score >= threshold.
  std::vector<double> thresholds;
  std::vector<double> tpr;
  std::vector<double> fpr;
  double auc = 0.0;
};

RocCurve RocFromScores(const Vector& scores, const std::vector<Label>& labels);

// Trapezoidal area under (fpr, tpr).
double TrapezoidAuc(const std::vector<double>& fpr, const std::vector<double>& tpr);

// F1 with outlier positive and prediction score > threshold; 0 when there
// is no true positive.
double F1AtThreshold(const Vector& scores, const std::vector<Label>& labels, double threshold);

// ---------------------------------------------------------------------------
// Phase transition: smallest N per M such that the solver recovers a normal.

enum class InitKind { kSpectral, kRandom };

struct PhaseConfig {
  std::vector<Eigen::Index> Ms;
  std::vector<Eigen::Index> Ns;
  int D = 10;
  int d = 9;
  double theta_star = 0.01;
  int trials = 10;
  std::uint64_t seed = 0;
  SolveOptions solver;
  // When set, mu0 of the solver's schedule is replaced by one backtracking
  // line search from the initial point of each trial.
  bool auto_mu0 = true;
  InitKind init = InitKind::kSpectral;
};

struct PhaseCell {
  Eigen::Index M = 0;
  Eigen::Index N = 0;
  std::vector<double> thetas;
  std::vector<std::uint64_t> seeds;
  double mean_theta = 0.0;
  bool failed = false;
  std::string error;
};

struct BoundaryFit {
  std::vector<double> Ms;  // M values that have a boundary point
  std::vector<double> Ns;  // smallest successful N for each of them
  std::vector<double> missing_Ms;  // no N on the grid succeeded
  double a = 0.0;                   // least squares N = a sqrt(M)
  double a_rms_residual = 0.0;
  double loglog_slope = 0.0;        // slope of log M against log N
  double loglog_intercept = 0.0;
  bool degenerate = false;          // fewer than two distinct points
  int inversions = 0;               // adjacent M pairs whose boundary N decreases
};

// Fits both the square-root law and the log-log slope to boundary points.
BoundaryFit FitBoundary(const std::vector<double>& Ms, const std::vector<double>& Ns);

struct PhaseGrid {
  PhaseConfig config;
  std::vector<PhaseCell> cells;  // row-major: M outer, N inner
  BoundaryFit boundary;
};

PhaseGrid PhaseTransition(const PhaseConfig& config);

// Seed of one trial of one cell, derived from (seed, trial, M, N).
std::uint64_t TrialSeed(std::uint64_t seed, Eigen::Index M, Eigen::Index N, int trial);

// CSV: M,N,ratio,rel_dim,trial,theta,seed
void WritePhaseCsv(const PhaseGrid& grid, std::ostream& out);

// ---------------------------------------------------------------------------
// Condition grid: closed-form ALP/global conditions against observed ALP runs.

struct ConditionGridConfig {
  Eigen::Index N = 500;
  int D = 30;
  std::vector<double> ratios;    // outlier ratio M / (M + N)
  std::vector<double> rel_dims;  // d / D
  int trials = 10;
  std::uint64_t seed = 0;
  EstimatorOptions estimator;
  int alp_iters = 3;
  double normal_tolerance = 1e-6;  // |phi - pi/2| below this counts as normal
};

struct ConditionTrial {
  double ratio = 0.0;
  double rel_dim = 0.0;
  int d = 0;
  Eigen::Index M = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  GeometryStats stats;
  ConditionReport global;
  ConditionReport alp;
  double phi0 = 0.0;
  std::vector<double> phis;               // phi_1..phi_k after ALP steps
  std::vector<double> objective_chain;    // f(b_hat_0), f(b_hat_1), ...
  int iterations_to_normal = -1;          // first k with phi_k ~ pi/2
  bool error = false;
  std::string message;
};

std::vector<ConditionTrial> ConditionGrid(const ConditionGridConfig& config);

// CSV: ratio,rel_dim,d,M,trial,seed,phi0,phi_natural,phi_star,
//      global_ok,alp_one_step_ok,alp_finite_ok,phi1..phik,iterations_to_normal
void WriteConditionCsv(const std::vector<ConditionTrial>& trials, std::ostream& out);

}  // namespace dpcp
