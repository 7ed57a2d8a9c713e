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

#include "dpcp/quantities.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dpcp/random.h"

namespace dpcp {

double CdConstant(int d) {
  if (d < 1) throw InvalidArgument("c_d is defined for d >= 1");
  if (d == 1) return 1.0;
  constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
  double c = kTwoOverPi;  // c_2
  for (int k = 2; k < d; ++k) c = kTwoOverPi / (k * c);
  return c;
}

double AverageAbsProjection(const Matrix& y, const Vector& alpha) {
  if (y.cols() == 0) return 0.0;
  return (y.transpose() * alpha).cwiseAbs().sum() / static_cast<double>(y.cols());
}

double AverageTangentialSignedSum(const Matrix& y, const Vector& alpha) {
  if (y.cols() == 0) return 0.0;
  const Vector g = y * SignVecReal(y.transpose() * alpha);
  return (g - alpha * alpha.dot(g)).norm() / static_cast<double>(y.cols());
}

namespace {

// Identifies the random streams of each estimated quantity.
enum class Quantity : std::uint64_t {
  kCXMin = 1,
  kCXMax = 2,
  kCOMin = 3,
  kCOMax = 4,
  kEtaO = 5,
  kEtaX = 6,
};

struct SearchPlan {
  std::int64_t probes = 0;
  std::int64_t restarts = 0;
  int restart_iters = 0;
};

SearchPlan PlanFor(const EstimatorOptions& options) {
  if (options.budget < 1) throw InvalidArgument("estimator budget must be >= 1");
  if (options.restart_iters < 1) throw InvalidArgument("restart_iters must be >= 1");
  SearchPlan plan;
  const std::int64_t local = options.budget / 2;
  plan.probes = options.budget - local;
  plan.restarts = std::max<std::int64_t>(1, local / options.restart_iters);
  plan.restart_iters = options.restart_iters;
  return plan;
}

Vector Normalized(const Vector& v) { return v / v.norm(); }

// Eigenvector of Y Y^T for the smallest (bottom = true) or largest
// eigenvalue, sign-fixed.
Vector ExtremeEigenvector(const Matrix& y, bool bottom) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(y * y.transpose());
  Vector v = bottom ? solver.eigenvectors().col(0)
                    : solver.eigenvectors().col(y.rows() - 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

class SphereEstimator {
 public:
  SphereEstimator(const Matrix& y, const EstimatorOptions& options, Quantity quantity)
      : y_(y), plan_(PlanFor(options)), seed_(options.seed),
        tag_(static_cast<std::uint64_t>(quantity)) {}

  // Best value of AverageAbsProjection from below-running descent.
  double Minimize() const {
    double best = std::numeric_limits<double>::infinity();
    ForEachProbe([&](const Vector& a) { best = std::min(best, AverageAbsProjection(y_, a)); });
    for (std::int64_t r = 0; r < plan_.restarts; ++r) {
      Vector a = StartPoint(r, /*bottom=*/true);
      best = std::min(best, AverageAbsProjection(y_, a));
      double step = 0.3;
      for (int i = 1; i < plan_.restart_iters; ++i) {
        const Vector g = y_ * SignVecReal(y_.transpose() * a);
        const Vector riemannian = g - a * a.dot(g);
        const double norm = riemannian.norm();
        if (!(norm > 0.0)) break;
        a = Normalized(a - step * riemannian / norm);
        step *= 0.93;
        best = std::min(best, AverageAbsProjection(y_, a));
      }
    }
    return best;
  }

  // Fixed point iteration a <- normalize(Y sign(Y^T a)); the value is
  // non-decreasing along it because the objective is convex.
  double Maximize() const {
    double best = 0.0;
    ForEachProbe([&](const Vector& a) { best = std::max(best, AverageAbsProjection(y_, a)); });
    for (std::int64_t r = 0; r < plan_.restarts; ++r) {
      Vector a = StartPoint(r, /*bottom=*/false);
      best = std::max(best, AverageAbsProjection(y_, a));
      for (int i = 1; i < plan_.restart_iters; ++i) {
        const Vector g = y_ * SignVecReal(y_.transpose() * a);
        const double norm = g.norm();
        if (!(norm > 0.0)) break;
        const Vector next = g / norm;
        const double value = AverageAbsProjection(y_, next);
        best = std::max(best, value);
        if ((next - a).norm() <= 1e-15) break;
        a = next;
      }
    }
    return best;
  }

  // Maximizes AverageTangentialSignedSum by accept-if-improved ascent. The
  // ascent direction comes from a surrogate in which sign is replaced by a
  // linear ramp of half-width kSmoothing; every accepted value is the exact
  // (unsmoothed) one.
  double MaximizeTangential() const {
    double best = 0.0;
    ForEachProbe([&](const Vector& a) {
      best = std::max(best, AverageTangentialSignedSum(y_, a));
    });
    for (std::int64_t r = 0; r < plan_.restarts; ++r) {
      Rng jitter(DeriveSeed(seed_, {static_cast<std::uint64_t>(Stream::kRestart), tag_,
                                    static_cast<std::uint64_t>(r), 1}));
      Vector a = StartPoint(r, /*bottom=*/false);
      double value = AverageTangentialSignedSum(y_, a);
      best = std::max(best, value);
      double step = 0.5;
      for (int i = 1; i < plan_.restart_iters; ++i) {
        const Vector g = y_ * SmoothedSign(y_.transpose() * a);
        const double along = a.dot(g);
        // d/da of ||g||^2 - (a^T g)^2 with g frozen, projected on the
        // tangent space: -2 (a^T g) (g - a a^T g).
        Vector direction = -along * (g - a * along);
        if (!(direction.norm() > 1e-14)) {
          direction = jitter.NormalVector(a.size());
          direction -= a * a.dot(direction);
          if (!(direction.norm() > 0.0)) break;
        }
        const Vector trial = Normalized(a + step * direction / direction.norm());
        const double trial_value = AverageTangentialSignedSum(y_, trial);
        if (trial_value > value) {
          a = trial;
          value = trial_value;
          best = std::max(best, value);
          step = std::min(1.0, step * 1.5);
        } else {
          step *= 0.5;
          if (step < 1e-12) step = 0.5;
        }
      }
    }
    return best;
  }

 private:
  static constexpr double kSmoothing = 1e-8;

  static Vector SmoothedSign(const Vector& p) {
    return p.unaryExpr([](double v) { return std::clamp(v / kSmoothing, -1.0, 1.0); });
  }

  template <typename F>
  void ForEachProbe(F&& visit) const {
    Rng rng(DeriveSeed(seed_, {static_cast<std::uint64_t>(Stream::kProbe), tag_}));
    for (std::int64_t i = 0; i < plan_.probes; ++i) visit(rng.SphereVector(y_.rows()));
  }

  Vector StartPoint(std::int64_t r, bool bottom) const {
    if (r == 0) return ExtremeEigenvector(y_, bottom);
    Rng rng(DeriveSeed(seed_, {static_cast<std::uint64_t>(Stream::kRestart), tag_,
                               static_cast<std::uint64_t>(r)}));
    return rng.SphereVector(y_.rows());
  }

  const Matrix& y_;
  SearchPlan plan_;
  std::uint64_t seed_;
  std::uint64_t tag_;
};

}  // namespace

GeometryStats EstimateStats(const Dataset& data, const SubspaceModel& truth,
                            const EstimatorOptions& options) {
  if (!data.labeled()) throw InvalidArgument("geometry statistics need labeled data");
  const SubspaceModel model = truth.Completed();
  const Matrix& basis = model.basis();
  if (basis.cols() == 0) throw InvalidArgument("subspace dimension must be >= 1");
  if (basis.rows() != data.dim()) throw InvalidArgument("truth/data dimension mismatch");

  GeometryStats stats;
  stats.D = data.dim();
  stats.d = basis.cols();
  stats.N = data.inlier_count();
  stats.M = data.outlier_count();
  stats.estimator = {options.budget, options.seed, true};
  if (stats.N == 0) throw InvalidArgument("geometry statistics need at least one inlier");

  const Matrix inlier_coords = basis.transpose() * data.inliers();
  stats.c_X_min = SphereEstimator(inlier_coords, options, Quantity::kCXMin).Minimize();
  stats.c_X_max = SphereEstimator(inlier_coords, options, Quantity::kCXMax).Maximize();
  stats.eta_X = SphereEstimator(inlier_coords, options, Quantity::kEtaX).MaximizeTangential();
  // Both estimates are one-sided from opposite directions; order them.
  stats.c_X_max = std::max(stats.c_X_max, stats.c_X_min);

  if (stats.M > 0) {
    const Matrix outliers = data.outliers();
    stats.c_O_min = SphereEstimator(outliers, options, Quantity::kCOMin).Minimize();
    stats.c_O_max = SphereEstimator(outliers, options, Quantity::kCOMax).Maximize();
    stats.c_O_max = std::max(stats.c_O_max, stats.c_O_min);
    stats.eta_O = SphereEstimator(outliers, options, Quantity::kEtaO).MaximizeTangential();
    stats.eta_O_bar = stats.eta_O + static_cast<double>(stats.D) / static_cast<double>(stats.M);
  }
  return stats;
}

namespace {

std::map<std::string, double> StatsInputs(const GeometryStats& s) {
  return {{"c_X_min", s.c_X_min}, {"c_X_max", s.c_X_max}, {"c_O_min", s.c_O_min},
          {"c_O_max", s.c_O_max}, {"eta_O", s.eta_O},     {"eta_X", s.eta_X},
          {"eta_O_bar", s.eta_O_bar}, {"N", static_cast<double>(s.N)},
          {"M", static_cast<double>(s.M)}, {"D", static_cast<double>(s.D)},
          {"d", static_cast<double>(s.d)}};
}

ConditionReport StatsReport(std::string name, const GeometryStats& stats) {
  ConditionReport report;
  report.name = std::move(name);
  report.inputs = StatsInputs(stats);
  report.estimator = stats.estimator;
  return report;
}

// Composite reports: lhs counts violated sub-conditions, rhs is 0.
void Compose(ConditionReport& report) {
  int violated = 0;
  for (const auto& sub : report.sub_conditions) violated += sub.satisfied ? 0 : 1;
  report.lhs = violated;
  report.rhs = 0.0;
  report.satisfied = violated == 0;
  if (report.note.empty()) report.note = "composite: lhs counts violated sub-conditions";
}

}  // namespace

ConditionReport CheckGlobalOptimality(const GeometryStats& stats) {
  ConditionReport report = StatsReport("global_optimality", stats);
  report.rhs = 1.0;
  if (stats.M == 0) {
    report.lhs = 0.0;
    report.satisfied = true;
    report.note = "no outliers";
    return report;
  }
  if (stats.N == 0) throw InvalidArgument("global optimality check needs N > 0");
  if (!(stats.c_X_min > 0.0)) throw InvalidArgument("global optimality check needs c_X_min > 0");
  const double spread = stats.c_O_max - stats.c_O_min;
  report.lhs = static_cast<double>(stats.M) / static_cast<double>(stats.N) *
               std::hypot(stats.eta_O_bar, spread) / stats.c_X_min;
  report.satisfied = report.lhs < report.rhs;
  return report;
}

AlpAngles ComputeAlpAngles(const GeometryStats& stats) {
  AlpAngles angles;
  const double n = static_cast<double>(stats.N);
  const double m = static_cast<double>(stats.M);
  const double denominator = n * stats.c_X_min - m * stats.eta_O_bar;
  if (!(denominator > 0.0) || !(stats.c_X_max > 0.0)) {
    angles.vacuous = true;
    angles.phi_natural = std::numeric_limits<double>::quiet_NaN();
    angles.phi_star = std::numeric_limits<double>::quiet_NaN();
    return angles;
  }
  angles.phi_natural = std::atan(m * stats.c_O_max / denominator);
  const double root = std::sqrt(n * n * stats.c_X_min * stats.c_X_min -
                                m * m * stats.eta_O_bar * stats.eta_O_bar);
  const double argument = (root - m * (stats.c_O_max - stats.c_O_min)) / (n * stats.c_X_max);
  angles.clamped = argument < 0.0 || argument > 1.0;
  angles.phi_star = std::acos(std::clamp(argument, 0.0, 1.0));
  return angles;
}

ConditionReport CheckAlpConditions(const GeometryStats& stats, double phi0) {
  const AlpAngles angles = ComputeAlpAngles(stats);
  ConditionReport report = StatsReport("alp_conditions", stats);
  report.inputs["phi0"] = phi0;
  report.extras["phi_natural"] = angles.phi_natural;
  report.extras["phi_star"] = angles.phi_star;
  report.extras["phi_star_clamped"] = angles.clamped ? 1.0 : 0.0;

  ConditionReport one_step = StatsReport("alp_one_step", stats);
  one_step.lhs = phi0;
  one_step.rhs = angles.phi_natural;
  ConditionReport finite = StatsReport("alp_finite_convergence", stats);
  finite.lhs = phi0;
  finite.rhs = angles.phi_star;
  if (angles.vacuous) {
    for (ConditionReport* r : {&report, &one_step, &finite}) {
      r->vacuous = true;
      r->satisfied = false;
      r->note = "condition vacuous: N c_X_min <= M eta_O_bar";
    }
    report.lhs = phi0;
    report.rhs = std::numeric_limits<double>::quiet_NaN();
  } else {
    one_step.satisfied = phi0 > one_step.rhs;
    finite.satisfied = phi0 > finite.rhs;
    report.lhs = phi0;
    report.rhs = std::min(angles.phi_natural, angles.phi_star);
    report.satisfied = phi0 > report.rhs;
    report.note = "satisfied when phi0 exceeds either threshold";
  }
  report.sub_conditions = {one_step, finite};
  return report;
}

double MuPrime(const GeometryStats& stats) {
  const double scale = std::max(static_cast<double>(stats.N) * stats.c_X_min,
                                static_cast<double>(stats.M) * stats.c_O_max);
  if (!(scale > 0.0)) throw InvalidArgument("mu' undefined: both N c_X_min and M c_O_max vanish");
  return 1.0 / (4.0 * scale);
}

ConditionReport CheckPsgmPreconditions(const GeometryStats& stats, double theta0) {
  const double n = static_cast<double>(stats.N);
  const double m = static_cast<double>(stats.M);
  const double coupling = n * stats.eta_X + m * stats.eta_O;
  const double permeance = n * stats.c_X_min;

  ConditionReport report = StatsReport("psgm_preconditions", stats);
  report.inputs["theta0"] = theta0;

  ConditionReport angle = StatsReport("psgm_initial_angle", stats);
  angle.lhs = theta0;
  angle.rhs = std::atan2(permeance, coupling);
  angle.satisfied = angle.lhs < angle.rhs;

  ConditionReport balance = StatsReport("psgm_permeance_dominates", stats);
  balance.lhs = coupling;
  balance.rhs = permeance;
  balance.satisfied = balance.lhs <= balance.rhs;

  report.sub_conditions = {angle, balance};
  Compose(report);
  if (permeance > 0.0 || m * stats.c_O_max > 0.0) report.extras["mu_prime"] = MuPrime(stats);
  return report;
}

ConditionReport CheckRandomModelBound(const RandomBoundParams& p) {
  if (p.N < 1 || p.M < 0) throw InvalidArgument("random-model bound needs N >= 1, M >= 0");
  if (p.d < 1 || p.d >= p.D) throw InvalidArgument("random-model bound needs 1 <= d < D");
  if (!(p.t > 0.0)) throw InvalidArgument("t must be positive");
  const double n = static_cast<double>(p.N);
  const double m = static_cast<double>(p.M);
  const double cd = CdConstant(p.d);
  const double margin = cd * std::sqrt(n) - 2.0;
  if (!(margin > 0.0)) throw InvalidArgument("no admissible t: c_d sqrt(N) <= 2");

  double s = p.t;
  double t_limit = 0.0;
  std::string name;
  switch (p.mode) {
    case RandomBoundMode::kBase:
      t_limit = 2.0 * margin;
      name = "random_model_bound";
      break;
    case RandomBoundMode::kHighDimensional:
      t_limit = 4.0 * margin * margin / p.d;
      s = std::sqrt(p.t * p.d);
      name = "random_model_bound_high_dimensional";
      break;
    case RandomBoundMode::kLargeScale:
      if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
      t_limit = 4.0 * margin * margin / std::pow(n, p.alpha);
      s = std::sqrt(p.t * std::pow(n, p.alpha));
      name = "random_model_bound_large_scale";
      break;
  }
  if (!(p.t < t_limit)) {
    throw InvalidArgument("t = " + std::to_string(p.t) + " violates t < " + std::to_string(t_limit));
  }

  ConditionReport report;
  report.name = name;
  const double log_term = std::sqrt(static_cast<double>(p.D)) * std::log(static_cast<double>(p.D));
  report.lhs = (4.0 + s) * (4.0 + s) * m + p.C0 * (log_term + s) * (log_term + s) * m;
  const double right = cd * n - (2.0 + s / 2.0) * std::sqrt(n);
  report.rhs = right * right;
  report.satisfied = report.lhs <= report.rhs;
  report.inputs = {{"N", n}, {"M", m}, {"D", static_cast<double>(p.D)},
                   {"d", static_cast<double>(p.d)}, {"t", p.t}, {"C0", p.C0}};
  if (p.mode == RandomBoundMode::kLargeScale) report.inputs["alpha"] = p.alpha;
  report.extras = {{"c_d", cd}, {"t_limit", t_limit}, {"effective_t", s}};
  return report;
}

namespace {

// k-th largest singular value (1-based); zero beyond the rank.
double SingularValue(const Matrix& a, Eigen::Index k) {
  if (a.cols() == 0) return 0.0;
  const Vector s = Eigen::JacobiSVD<Matrix>(a).singularValues();
  return k <= s.size() ? s[k - 1] : 0.0;
}

}  // namespace

ConditionReport CheckSpectralPsgm(const GeometryStats& stats, const Dataset& data) {
  const Matrix outliers = data.outliers();
  const Matrix inliers = data.inliers();
  const double sigma1_o = SingularValue(outliers, 1);
  const double sigmaD_o = SingularValue(outliers, data.dim());
  const double sigmad_x = SingularValue(inliers, stats.d);
  const double spread = sigma1_o * sigma1_o - sigmaD_o * sigmaD_o;

  const double n = static_cast<double>(stats.N);
  const double m = static_cast<double>(stats.M);
  const double coupling = n * stats.eta_X + m * stats.eta_O;
  const double permeance = n * stats.c_X_min;

  ConditionReport report = StatsReport("spectral_psgm", stats);
  report.extras = {{"sigma_1_O", sigma1_o}, {"sigma_D_O", sigmaD_o}, {"sigma_d_X", sigmad_x}};

  ConditionReport ratio = StatsReport("spectral_psgm_ratio", stats);
  const double gap = sigmad_x * sigmad_x - spread;
  ratio.rhs = coupling > 0.0 ? std::pow(permeance / coupling, 2)
                             : std::numeric_limits<double>::infinity();
  if (gap > 0.0) {
    ratio.lhs = spread / gap;
    ratio.satisfied = ratio.lhs < ratio.rhs;
  } else {
    ratio.lhs = std::numeric_limits<double>::infinity();
    ratio.vacuous = true;
    ratio.note = "outlier spectral spread exceeds the inlier gap";
  }

  ConditionReport balance = StatsReport("psgm_permeance_dominates", stats);
  balance.lhs = coupling;
  balance.rhs = permeance;
  balance.satisfied = balance.lhs <= balance.rhs;

  report.sub_conditions = {ratio, balance};
  Compose(report);
  return report;
}

ConditionReport CheckSpectralPsgmRandomModel(const SpectralRandomParams& p) {
  if (p.N < 1 || p.M < 0) throw InvalidArgument("need N >= 1, M >= 0");
  if (p.d < 1 || p.d >= p.D) throw InvalidArgument("need 1 <= d < D");
  const double n = static_cast<double>(p.N);
  const double m = static_cast<double>(p.M);
  const double big_d = static_cast<double>(p.D);
  const double small_d = static_cast<double>(p.d);
  const double cd = CdConstant(p.d);
  const double t_limit = std::min(std::sqrt(n) - p.C2 * std::sqrt(small_d), 2.0 * cd * std::sqrt(n) - 4.0);
  if (!(p.t > 0.0 && p.t < t_limit)) {
    throw InvalidArgument("t must lie in (0, " + std::to_string(t_limit) + ")");
  }
  const double inlier_scale = cd * n - (2.0 + p.t / 2.0) * std::sqrt(n);
  const double d_log_d = std::sqrt(small_d) * std::log(small_d);
  const double big_log = std::sqrt(big_d) * std::log(big_d);

  ConditionReport report;
  report.name = "spectral_psgm_random_model";
  report.inputs = {{"N", n}, {"M", m}, {"D", big_d}, {"d", small_d}, {"t", p.t},
                   {"C0", p.C0}, {"C1", p.C1}, {"C2", p.C2}};
  report.extras = {{"c_d", cd}, {"t_limit", t_limit},
                   {"failure_probability_bound",
                    3.0 * std::exp(-p.t * p.t / 2.0) + 3.0 * std::exp(-p.C1 * p.t * p.t)}};

  ConditionReport spectral;
  spectral.name = "spectral_psgm_random_model_angle";
  const double residual = std::sqrt(n) - p.C2 * std::sqrt(small_d) - p.t;
  spectral.lhs = (std::sqrt(big_d) / small_d) * residual * residual /
                 (4.0 * p.C2 * std::sqrt(m) + 4.0 * p.C2 * p.t);
  const double fraction = p.C0 * (d_log_d * std::sqrt(n) + big_log * std::sqrt(m) +
                                  p.t * (std::sqrt(n) + std::sqrt(m))) / inlier_scale;
  spectral.rhs = 1.0 + fraction * fraction;
  spectral.satisfied = spectral.lhs > spectral.rhs;

  ConditionReport balance;
  balance.name = "spectral_psgm_random_model_balance";
  balance.lhs = p.C0 * ((big_log + p.t) * std::sqrt(m) + (d_log_d + p.t) * std::sqrt(n));
  balance.rhs = inlier_scale;
  balance.satisfied = balance.lhs <= balance.rhs;

  report.sub_conditions = {spectral, balance};
  Compose(report);
  return report;
}

}  // namespace dpcp
