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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

#include "dpcp/init.h"
#include "dpcp/random.h"
#include "dpcp/synth.h"

namespace dpcp {
namespace {

struct ClassCounts {
  Eigen::Index positives = 0;  // outliers
  Eigen::Index negatives = 0;  // inliers
};

ClassCounts CheckBinary(const Vector& scores, const std::vector<Label>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != scores.size()) {
    throw InvalidArgument("score and label counts differ");
  }
  ClassCounts counts;
  for (Label label : labels) {
    if (label == Label::kOutlier) {
      ++counts.positives;
    } else if (label == Label::kInlier) {
      ++counts.negatives;
    } else {
      throw InvalidArgument("metrics need every point labeled inlier or outlier");
    }
  }
  if (counts.positives == 0 || counts.negatives == 0) {
    throw InvalidArgument("metrics need at least one inlier and one outlier");
  }
  if (!scores.allFinite()) throw InvalidArgument("scores must be finite");
  return counts;
}

}  // namespace

double TrapezoidAuc(const std::vector<double>& fpr, const std::vector<double>& tpr) {
  if (fpr.size() != tpr.size()) throw InvalidArgument("curve coordinates differ in length");
  double area = 0.0;
  for (std::size_t i = 1; i < fpr.size(); ++i) {
    area += (fpr[i] - fpr[i - 1]) * (tpr[i] + tpr[i - 1]) / 2.0;
  }
  return area;
}

RocCurve RocFromScores(const Vector& scores, const std::vector<Label>& labels) {
  const ClassCounts counts = CheckBinary(scores, labels);
  std::vector<Eigen::Index> order(scores.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  curve.tpr.push_back(0.0);
  curve.fpr.push_back(0.0);
  Eigen::Index tp = 0;
  Eigen::Index fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    // Tied scores enter together.
    while (i < order.size() && scores[order[i]] == threshold) {
      (labels[order[i]] == Label::kOutlier ? tp : fp) += 1;
      ++i;
    }
    curve.thresholds.push_back(threshold);
    curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(counts.positives));
    curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(counts.negatives));
  }
  curve.auc = TrapezoidAuc(curve.fpr, curve.tpr);
  return curve;
}

double F1AtThreshold(const Vector& scores, const std::vector<Label>& labels, double threshold) {
  CheckBinary(scores, labels);
  Eigen::Index tp = 0;
  Eigen::Index fp = 0;
  Eigen::Index fn = 0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const bool predicted_outlier = scores[i] > threshold;
    const bool outlier = labels[i] == Label::kOutlier;
    if (predicted_outlier && outlier) ++tp;
    if (predicted_outlier && !outlier) ++fp;
    if (!predicted_outlier && outlier) ++fn;
  }
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

BoundaryFit FitBoundary(const std::vector<double>& Ms, const std::vector<double>& Ns) {
  if (Ms.size() != Ns.size()) throw InvalidArgument("boundary coordinates differ in length");
  BoundaryFit fit;
  fit.Ms = Ms;
  fit.Ns = Ns;
  double sum_nm = 0.0;
  double sum_m = 0.0;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    if (!(Ms[i] > 0.0) || !(Ns[i] > 0.0)) throw InvalidArgument("boundary points must be positive");
    sum_nm += Ns[i] * std::sqrt(Ms[i]);
    sum_m += Ms[i];
  }
  if (Ms.empty()) {
    fit.degenerate = true;
    return fit;
  }
  fit.a = sum_nm / sum_m;
  double sq = 0.0;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const double r = Ns[i] - fit.a * std::sqrt(Ms[i]);
    sq += r * r;
  }
  fit.a_rms_residual = std::sqrt(sq / static_cast<double>(Ms.size()));

  std::vector<std::size_t> order(Ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return Ms[a] < Ms[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (Ns[order[i]] < Ns[order[i - 1]]) ++fit.inversions;
  }

  const double n = static_cast<double>(Ms.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    mean_x += std::log(Ns[i]) / n;
    mean_y += std::log(Ms[i]) / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const double dx = std::log(Ns[i]) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(Ms[i]) - mean_y);
  }
  if (Ms.size() < 2 || !(sxx > 1e-300)) {
    fit.degenerate = true;
    fit.loglog_slope = std::numeric_limits<double>::quiet_NaN();
    fit.loglog_intercept = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  fit.loglog_slope = sxy / sxx;
  fit.loglog_intercept = mean_y - fit.loglog_slope * mean_x;
  return fit;
}

std::uint64_t TrialSeed(std::uint64_t seed, Eigen::Index M, Eigen::Index N, int trial) {
  return DeriveSeed(seed, {static_cast<std::uint64_t>(Stream::kTrial),
                           static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(M),
                           static_cast<std::uint64_t>(N)});
}

PhaseGrid PhaseTransition(const PhaseConfig& config) {
  if (config.Ms.empty() || config.Ns.empty()) throw InvalidArgument("phase grid axes must be non-empty");
  if (config.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (!(config.theta_star > 0.0)) throw InvalidArgument("theta_star must be positive");

  PhaseGrid grid;
  grid.config = config;
  std::vector<Eigen::Index> ns = config.Ns;
  std::sort(ns.begin(), ns.end());

  std::vector<double> boundary_m;
  std::vector<double> boundary_n;
  std::vector<double> missing;
  for (Eigen::Index m : config.Ms) {
    std::optional<Eigen::Index> smallest;
    for (Eigen::Index n : ns) {
      PhaseCell cell{.M = m, .N = n};
      try {
        for (int t = 0; t < config.trials; ++t) {
          const std::uint64_t seed = TrialSeed(config.seed, m, n, t);
          const SyntheticInstance instance =
              SampleSpherical({config.D, config.d, n, m, seed});
          const UnitVector b0 = config.init == InitKind::kSpectral
                                    ? SpectralInit(instance.data)
                                    : RandomInit(config.D, seed);
          SolveOptions options = config.solver;
          if (config.auto_mu0) {
            options.schedule.mu0 =
                BacktrackingInitialStep(instance.data, b0, options.schedule.line_search);
          }
          options.record_trace = false;
          const SolveReport report = Solve(instance.data, b0, options, instance.truth.model);
          cell.thetas.push_back(
              PrincipalAngle(instance.truth.model, report.final_b).theta_from_complement);
          cell.seeds.push_back(seed);
        }
        cell.mean_theta = std::accumulate(cell.thetas.begin(), cell.thetas.end(), 0.0) /
                          static_cast<double>(cell.thetas.size());
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
      }
      if (!cell.failed && !smallest && cell.mean_theta <= config.theta_star) smallest = n;
      grid.cells.push_back(std::move(cell));
    }
    if (smallest) {
      boundary_m.push_back(static_cast<double>(m));
      boundary_n.push_back(static_cast<double>(*smallest));
    } else {
      missing.push_back(static_cast<double>(m));
    }
  }
  grid.boundary = FitBoundary(boundary_m, boundary_n);
  grid.boundary.missing_Ms = missing;
  return grid;
}

void WritePhaseCsv(const PhaseGrid& grid, std::ostream& out) {
  out << "M,N,ratio,rel_dim,trial,theta,seed\n";
  out.precision(17);
  const double rel_dim = static_cast<double>(grid.config.d) / grid.config.D;
  for (const PhaseCell& cell : grid.cells) {
    const double ratio = static_cast<double>(cell.M) / static_cast<double>(cell.M + cell.N);
    for (std::size_t t = 0; t < cell.thetas.size(); ++t) {
      out << cell.M << ',' << cell.N << ',' << ratio << ',' << rel_dim << ',' << t << ','
          << cell.thetas[t] << ',' << cell.seeds[t] << '\n';
    }
    if (cell.failed) {
      out << cell.M << ',' << cell.N << ',' << ratio << ',' << rel_dim << ",-1,nan,0\n";
    }
  }
}

std::vector<ConditionTrial> ConditionGrid(const ConditionGridConfig& config) {
  if (config.ratios.empty() || config.rel_dims.empty()) {
    throw InvalidArgument("condition grid axes must be non-empty");
  }
  if (config.trials < 1 || config.alp_iters < 1) throw InvalidArgument("trials and alp_iters must be >= 1");
  std::vector<ConditionTrial> out;
  for (std::size_t ri = 0; ri < config.ratios.size(); ++ri) {
    for (std::size_t qi = 0; qi < config.rel_dims.size(); ++qi) {
      for (int t = 0; t < config.trials; ++t) {
        ConditionTrial trial;
        trial.ratio = config.ratios[ri];
        trial.rel_dim = config.rel_dims[qi];
        trial.d = std::clamp(static_cast<int>(std::lround(trial.rel_dim * config.D)), 1,
                             config.D - 1);
        trial.M = OutlierRatioToM(config.N, trial.ratio);
        trial.trial = t;
        trial.seed = DeriveSeed(config.seed, {static_cast<std::uint64_t>(Stream::kTrial), ri, qi,
                                              static_cast<std::uint64_t>(t)});
        try {
          const SyntheticInstance instance =
              SampleSpherical({config.D, trial.d, config.N, trial.M, trial.seed});
          EstimatorOptions estimator = config.estimator;
          estimator.seed = trial.seed;
          trial.stats = EstimateStats(instance.data, instance.truth.model, estimator);
          const UnitVector b0 = SpectralInit(instance.data);
          trial.phi0 = PrincipalAngle(instance.truth.model, b0).phi_from_S;
          trial.global = CheckGlobalOptimality(trial.stats);
          trial.alp = CheckAlpConditions(trial.stats, trial.phi0);

          AlpSolveOptions alp;
          alp.max_iters = config.alp_iters;
          alp.stall_tolerance = -std::numeric_limits<double>::infinity();
          const AlpSolveReport run = AlpSolve(instance.data, b0, alp, instance.truth.model);
          trial.objective_chain = run.objective_chain;
          for (const TraceRow& row : run.report.trace) {
            trial.phis.push_back(row.phi);
            if (trial.iterations_to_normal < 0 &&
                std::abs(row.phi - std::numbers::pi / 2) <= config.normal_tolerance) {
              trial.iterations_to_normal = row.k;
            }
          }
        } catch (const std::exception& e) {
          trial.error = true;
          trial.message = e.what();
        }
        out.push_back(std::move(trial));
      }
    }
  }
  return out;
}

void WriteConditionCsv(const std::vector<ConditionTrial>& trials, std::ostream& out) {
  std::size_t steps = 0;
  for (const auto& t : trials) steps = std::max(steps, t.phis.size());
  out << "ratio,rel_dim,d,M,trial,seed,phi0,phi_natural,phi_star,global_ok,alp_one_step_ok,"
         "alp_finite_ok";
  for (std::size_t k = 1; k <= steps; ++k) out << ",phi" << k;
  out << ",iterations_to_normal\n";
  out.precision(17);
  for (const auto& t : trials) {
    const auto extra = [&](const char* key) {
      const auto it = t.alp.extras.find(key);
      return it == t.alp.extras.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    };
    const bool one_step = !t.alp.sub_conditions.empty() && t.alp.sub_conditions[0].satisfied;
    const bool finite = t.alp.sub_conditions.size() > 1 && t.alp.sub_conditions[1].satisfied;
    out << t.ratio << ',' << t.rel_dim << ',' << t.d << ',' << t.M << ',' << t.trial << ','
        << t.seed << ',' << t.phi0 << ',' << extra("phi_natural") << ',' << extra("phi_star")
        << ',' << (t.global.satisfied ? 1 : 0) << ',' << (one_step ? 1 : 0) << ','
        << (finite ? 1 : 0);
    for (std::size_t k = 0; k < steps; ++k) {
      out << ',';
      if (k < t.phis.size()) out << t.phis[k];
    }
    out << ',' << t.iterations_to_normal << '\n';
  }
}

}  // namespace dpcp
