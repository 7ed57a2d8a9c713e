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

#include "dpcp/report_json.h"

#include <cmath>

namespace dpcp {

Json JsonNumber(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

Json ToJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(JsonNumber(v[i]));
  return out;
}

namespace {

Json NumberArray(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(JsonNumber(v));
  return out;
}

Json NumberMap(const std::map<std::string, double>& values) {
  Json out = Json::object();
  for (const auto& [key, v] : values) out[key] = JsonNumber(v);
  return out;
}

}  // namespace

Json ToJson(const EstimatorInfo& info) {
  return Json{{"budget", info.budget}, {"seed", info.seed}, {"one_sided", info.one_sided}};
}

Json ToJson(const GeometryStats& stats) {
  return Json{{"N", stats.N},
              {"M", stats.M},
              {"D", stats.D},
              {"d", stats.d},
              {"c_X_min", JsonNumber(stats.c_X_min)},
              {"c_X_max", JsonNumber(stats.c_X_max)},
              {"c_O_min", JsonNumber(stats.c_O_min)},
              {"c_O_max", JsonNumber(stats.c_O_max)},
              {"eta_O", JsonNumber(stats.eta_O)},
              {"eta_X", JsonNumber(stats.eta_X)},
              {"eta_O_bar", JsonNumber(stats.eta_O_bar)},
              {"estimator", ToJson(stats.estimator)}};
}

Json ToJson(const ConditionReport& report) {
  Json out{{"name", report.name},
           {"satisfied", report.satisfied},
           {"vacuous", report.vacuous},
           {"lhs", JsonNumber(report.lhs)},
           {"rhs", JsonNumber(report.rhs)},
           {"inputs", NumberMap(report.inputs)}};
  if (report.estimator) out["estimator"] = ToJson(*report.estimator);
  if (!report.extras.empty()) out["extras"] = NumberMap(report.extras);
  if (!report.sub_conditions.empty()) {
    Json subs = Json::array();
    for (const auto& sub : report.sub_conditions) subs.push_back(ToJson(sub));
    out["sub_conditions"] = std::move(subs);
  }
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

Json ToJson(const StepSchedule& schedule) {
  Json out{{"kind", StepKindName(schedule.kind)}, {"mu0", JsonNumber(schedule.mu0)}};
  if (schedule.kind == StepKind::kPiecewiseGeometric) {
    out["K0"] = schedule.K0;
    out["K"] = schedule.K;
    out["beta"] = schedule.beta;
  }
  if (schedule.kind == StepKind::kMbls) {
    out["shrink"] = schedule.line_search.shrink;
    out["grow"] = schedule.line_search.grow;
    out["max_backtracks"] = schedule.line_search.max_backtracks;
    out["armijo"] = schedule.line_search.armijo;
  }
  return out;
}

Json ToJson(const SolveReport& report, bool with_trace) {
  Json out{{"method", report.method},
           {"final_b", ToJson(report.final_b.vec())},
           {"final_objective", JsonNumber(report.final_objective)},
           {"initial_objective", JsonNumber(report.initial_objective)},
           {"initial_theta", JsonNumber(report.initial_theta)},
           {"iters", report.iters},
           {"termination", TerminationName(report.termination)},
           {"non_monotone_steps", report.non_monotone_steps},
           {"wall_nanos", report.wall_nanos},
           {"flags", report.flags}};
  if (with_trace) {
    Json rows = Json::array();
    for (const TraceRow& row : report.trace) {
      rows.push_back(Json{{"k", row.k},
                          {"objective", JsonNumber(row.objective)},
                          {"step", JsonNumber(row.step)},
                          {"theta", JsonNumber(row.theta)},
                          {"phi", JsonNumber(row.phi)},
                          {"wall_nanos", row.wall_nanos},
                          {"non_monotone", row.non_monotone}});
    }
    out["trace"] = std::move(rows);
  }
  return out;
}

Json ToJson(const PlaneDetection& detection) {
  Json out{{"method", detection.method},
           {"normal4", ToJson(detection.normal4.vec())},
           {"threshold", detection.threshold},
           {"inlier_count", detection.inlier_count},
           {"points", detection.scores.size()},
           {"iterations", detection.iterations},
           {"wall_nanos", detection.wall_nanos},
           {"auc", detection.auc ? JsonNumber(*detection.auc) : Json(nullptr)},
           {"f1", detection.f1 ? JsonNumber(*detection.f1) : Json(nullptr)},
           {"flags", detection.flags}};
  return out;
}

Json ToJson(const RocCurve& curve) {
  return Json{{"auc", JsonNumber(curve.auc)},
              {"thresholds", NumberArray(curve.thresholds)},
              {"tpr", NumberArray(curve.tpr)},
              {"fpr", NumberArray(curve.fpr)}};
}

Json ToJson(const BoundaryFit& fit) {
  return Json{{"Ms", NumberArray(fit.Ms)},
              {"Ns", NumberArray(fit.Ns)},
              {"missing_Ms", NumberArray(fit.missing_Ms)},
              {"a", JsonNumber(fit.a)},
              {"a_rms_residual", JsonNumber(fit.a_rms_residual)},
              {"loglog_slope", JsonNumber(fit.loglog_slope)},
              {"loglog_intercept", JsonNumber(fit.loglog_intercept)},
              {"degenerate", fit.degenerate},
              {"inversions", fit.inversions}};
}

Json ToJson(const PhaseGrid& grid) {
  const PhaseConfig& c = grid.config;
  Json cells = Json::array();
  for (const PhaseCell& cell : grid.cells) {
    Json entry{{"M", cell.M},
               {"N", cell.N},
               {"mean_theta", JsonNumber(cell.mean_theta)},
               {"thetas", NumberArray(cell.thetas)},
               {"seeds", cell.seeds}};
    if (cell.failed) entry["error"] = cell.error;
    cells.push_back(std::move(entry));
  }
  return Json{{"config",
               {{"Ms", c.Ms},
                {"Ns", c.Ns},
                {"D", c.D},
                {"d", c.d},
                {"theta_star", c.theta_star},
                {"trials", c.trials},
                {"seed", c.seed},
                {"schedule", ToJson(c.solver.schedule)},
                {"max_iters", c.solver.max_iters},
                {"auto_mu0", c.auto_mu0},
                {"init", c.init == InitKind::kSpectral ? "spectral" : "random"}}},
              {"cells", std::move(cells)},
              {"boundary", ToJson(grid.boundary)}};
}

Json ToJson(const ConditionTrial& trial) {
  Json out{{"ratio", trial.ratio},
           {"rel_dim", trial.rel_dim},
           {"d", trial.d},
           {"M", trial.M},
           {"trial", trial.trial},
           {"seed", trial.seed}};
  if (trial.error) {
    out["error"] = trial.message;
    return out;
  }
  out["stats"] = ToJson(trial.stats);
  out["global"] = ToJson(trial.global);
  out["alp"] = ToJson(trial.alp);
  out["phi0"] = JsonNumber(trial.phi0);
  out["phis"] = NumberArray(trial.phis);
  out["objective_chain"] = NumberArray(trial.objective_chain);
  out["iterations_to_normal"] = trial.iterations_to_normal;
  return out;
}

}  // namespace dpcp
