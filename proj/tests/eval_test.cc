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

#include "dpcp/eval.h"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

namespace dpcp {
namespace {

constexpr Label kIn = Label::kInlier;
constexpr Label kOut = Label::kOutlier;

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Mann-Whitney statistic: P(score_out > score_in) + P(tie) / 2 over all pairs.
double PairCountAuc(const Vector& scores, const std::vector<Label>& labels) {
  double wins = 0.0, pairs = 0.0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    if (labels[i] != kOut) continue;
    for (Eigen::Index j = 0; j < scores.size(); ++j) {
      if (labels[j] != kIn) continue;
      pairs += 1.0;
      wins += scores[i] > scores[j] ? 1.0 : (scores[i] == scores[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(RocTest, SpecExamples) {
  EXPECT_DOUBLE_EQ(RocFromScores(Vec({0.1, 0.2, 0.9, 0.8}), {kIn, kIn, kOut, kOut}).auc, 1.0);
  EXPECT_DOUBLE_EQ(RocFromScores(Vec({0.5, 0.5, 0.5, 0.5}), {kOut, kIn, kIn, kOut}).auc, 0.5);
  const Vector s = Vec({0.1, 0.2, 0.15, 0.3});
  const std::vector<Label> l = {kIn, kOut, kIn, kOut};
  EXPECT_DOUBLE_EQ(PairCountAuc(s, l), 1.0);
  EXPECT_DOUBLE_EQ(RocFromScores(s, l).auc, 1.0);
}

TEST(RocTest, MatchesPairCountingWithTies) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> level(0, 9);
  std::bernoulli_distribution outlier(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + trial;
    Vector scores(n);
    std::vector<Label> labels(n);
    for (int i = 0; i < n; ++i) {
      labels[i] = outlier(rng) ? kOut : kIn;
      scores[i] = 0.1 * level(rng) + (labels[i] == kOut ? 0.2 : 0.0);
    }
    labels[0] = kIn;
    labels[1] = kOut;
    const RocCurve roc = RocFromScores(scores, labels);
    EXPECT_NEAR(roc.auc, PairCountAuc(scores, labels), 1e-12) << trial;
    EXPECT_NEAR(roc.auc, TrapezoidAuc(roc.fpr, roc.tpr), 1e-12);
    EXPECT_TRUE(std::isinf(roc.thresholds.front()));
    EXPECT_EQ(roc.tpr.front(), 0.0);
    EXPECT_EQ(roc.fpr.back(), 1.0);
    for (std::size_t k = 1; k < roc.thresholds.size(); ++k) {
      EXPECT_LT(roc.thresholds[k], roc.thresholds[k - 1]);
      EXPECT_GE(roc.tpr[k], roc.tpr[k - 1]);
      EXPECT_GE(roc.fpr[k], roc.fpr[k - 1]);
    }
  }
}

TEST(RocTest, InvalidInputs) {
  EXPECT_THROW(RocFromScores(Vec({0.1, 0.2}), {kIn, kIn}), InvalidArgument);
  EXPECT_THROW(RocFromScores(Vec({0.1, 0.2}), {kIn}), InvalidArgument);
  EXPECT_THROW(RocFromScores(Vec({0.1, 0.2}), {kIn, Label::kUnknown}), InvalidArgument);
  EXPECT_THROW(RocFromScores(Vec({0.1, NAN}), {kIn, kOut}), InvalidArgument);
  EXPECT_THROW(TrapezoidAuc({0.0, 1.0}, {0.0}), InvalidArgument);
}

TEST(F1Test, SpecExamples) {
  const Vector s = Vec({0.1, 0.2, 0.9, 0.8});
  const std::vector<Label> l = {kIn, kIn, kOut, kOut};
  EXPECT_DOUBLE_EQ(F1AtThreshold(s, l, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(F1AtThreshold(s, l, 10.0), 0.0);
  // Predicted outliers are scores > 0.5: two true positives, one false
  // positive (0.6) and one false negative (0.4).
  const Vector t = Vec({0.9, 0.8, 0.6, 0.4, 0.1});
  EXPECT_DOUBLE_EQ(F1AtThreshold(t, {kOut, kOut, kIn, kOut, kIn}, 0.5), 2.0 / 3.0);
}

TEST(BoundaryFitTest, ExactSquareRootLaw) {
  std::vector<double> ms, ns;
  for (double m : {4.0, 16.0, 64.0, 256.0, 1024.0}) {
    ms.push_back(m);
    ns.push_back(std::sqrt(m));
  }
  const BoundaryFit fit = FitBoundary(ms, ns);
  EXPECT_NEAR(fit.a, 1.0, 1e-6);
  EXPECT_NEAR(fit.loglog_slope, 2.0, 1e-6);
  EXPECT_NEAR(fit.a_rms_residual, 0.0, 1e-9);
  EXPECT_FALSE(fit.degenerate);
  EXPECT_EQ(fit.inversions, 0);
}

TEST(BoundaryFitTest, DegenerateAndInversions) {
  EXPECT_TRUE(FitBoundary({100.0}, {10.0}).degenerate);
  EXPECT_TRUE(FitBoundary({}, {}).degenerate);
  EXPECT_EQ(FitBoundary({10.0, 20.0, 40.0}, {5.0, 4.0, 8.0}).inversions, 1);
  EXPECT_THROW(FitBoundary({1.0}, {}), InvalidArgument);
  EXPECT_THROW(FitBoundary({1.0, 0.0}, {1.0, 1.0}), InvalidArgument);
}

TEST(TrialSeedTest, DistinctAcrossCoordinates) {
  std::set<std::uint64_t> seen;
  for (Eigen::Index m : {10, 20}) {
    for (Eigen::Index n : {10, 20}) {
      for (int t = 0; t < 5; ++t) seen.insert(TrialSeed(7, m, n, t));
    }
  }
  EXPECT_EQ(seen.size(), 20u);
  EXPECT_EQ(TrialSeed(7, 10, 20, 3), TrialSeed(7, 10, 20, 3));
  EXPECT_NE(TrialSeed(7, 10, 20, 3), TrialSeed(8, 10, 20, 3));
}

TEST(PhaseTransitionTest, SmallGridIsRectangularAndReproducible) {
  PhaseConfig config;
  config.Ms = {10, 40};
  config.Ns = {3, 30};
  config.D = 4;
  config.d = 3;
  config.trials = 3;
  config.seed = 5;
  config.solver = {.schedule = StepSchedule::PiecewiseGeometric(1e-2), .max_iters = 200};
  const PhaseGrid grid = PhaseTransition(config);
  ASSERT_EQ(grid.cells.size(), 4u);
  for (const PhaseCell& cell : grid.cells) {
    EXPECT_EQ(cell.thetas.size(), 3u);
    EXPECT_EQ(cell.seeds.size(), 3u);
    EXPECT_FALSE(cell.failed);
    double mean = 0.0;
    for (double t : cell.thetas) mean += t / 3.0;
    EXPECT_NEAR(cell.mean_theta, mean, 1e-15);
  }
  EXPECT_EQ(grid.cells[1].M, 10);
  EXPECT_EQ(grid.cells[1].N, 30);
  // Plenty of inliers relative to outliers recovers the normal.
  EXPECT_LE(grid.cells[1].mean_theta, config.theta_star);

  const PhaseGrid again = PhaseTransition(config);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    EXPECT_EQ(grid.cells[i].thetas, again.cells[i].thetas);
  }
  std::stringstream csv;
  WritePhaseCsv(grid, csv);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "M,N,ratio,rel_dim,trial,theta,seed");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

TEST(PhaseTransitionTest, InvalidConfig) {
  PhaseConfig config;
  EXPECT_THROW(PhaseTransition(config), InvalidArgument);
  config.Ms = {10};
  config.Ns = {10};
  config.trials = 0;
  EXPECT_THROW(PhaseTransition(config), InvalidArgument);
}

TEST(ConditionGridTest, OutlierFreeColumnSatisfiesGlobalCondition) {
  ConditionGridConfig config;
  config.N = 100;
  config.D = 10;
  config.ratios = {0.0, 0.2};
  config.rel_dims = {0.5};
  config.trials = 2;
  config.estimator.budget = 400;
  const std::vector<ConditionTrial> trials = ConditionGrid(config);
  ASSERT_EQ(trials.size(), 4u);
  for (const ConditionTrial& t : trials) {
    EXPECT_FALSE(t.error) << t.message;
    EXPECT_EQ(t.d, 5);
    EXPECT_EQ(t.phis.size(), t.objective_chain.size() - 1);
    for (std::size_t k = 1; k < t.objective_chain.size(); ++k) {
      EXPECT_LE(t.objective_chain[k], t.objective_chain[k - 1] + 1e-9);
    }
    if (t.ratio == 0.0) {
      EXPECT_EQ(t.M, 0);
      EXPECT_TRUE(t.global.satisfied);
    }
  }
  std::stringstream csv;
  WriteConditionCsv(trials, csv);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("ratio,rel_dim,d,M,trial,seed,phi0", 0), 0u);
  EXPECT_NE(header.find(",iterations_to_normal"), std::string::npos);
}

}  // namespace
}  // namespace dpcp
