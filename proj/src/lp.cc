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

#include "dpcp/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace dpcp {

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// How a working variable z >= 0 relates to an original variable x.
enum class MapKind {
  kShift,   // x = lower + z
  kNegate,  // x = upper - z
  kPlus,    // x = z+ - z-, this is z+
  kMinus,   // this is z-
};

struct WorkingVar {
  MapKind kind;
  Eigen::Index original;
  double upper;  // bound on z, possibly +inf
};

class BoundedSimplex {
 public:
  BoundedSimplex(Matrix tableau, Vector rhs, std::vector<double> upper,
                 const LpOptions& options)
      : t_(std::move(tableau)), beta_(std::move(rhs)), upper_(std::move(upper)),
        options_(options) {
    const Eigen::Index m = t_.rows();
    basis_.resize(m);
    at_upper_.assign(t_.cols(), false);
    is_basic_.assign(t_.cols(), false);
    allowed_.assign(t_.cols(), true);
  }

  void SetBasis(Eigen::Index row, Eigen::Index column) {
    basis_[row] = column;
    is_basic_[column] = true;
  }
  void Forbid(Eigen::Index column) { allowed_[column] = false; }
  void SetUpper(Eigen::Index column, double value) { upper_[column] = value; }

  enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

  Outcome Run(const Vector& cost) {
    cost_ = cost;
    d_ = cost_;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) d_ -= cost_[basis_[i]] * t_.row(i).transpose();
    int degenerate_run = 0;
    while (true) {
      if (iterations_ >= options_.max_iterations) return Outcome::kIterationLimit;
      const bool bland = options_.pricing == LpPricing::kBland ||
                         degenerate_run >= options_.degenerate_switch;
      const Eigen::Index j = ChooseEntering(bland);
      if (j < 0) return Outcome::kOptimal;
      ++iterations_;

      const double direction = at_upper_[j] ? -1.0 : 1.0;
      Eigen::Index leave = -1;
      bool leave_to_upper = false;
      double best = kInf;
      double best_alpha = 0.0;
      for (Eigen::Index i = 0; i < t_.rows(); ++i) {
        const double alpha = direction * t_(i, j);
        double ratio;
        bool to_upper;
        if (alpha > options_.pivot_tolerance) {
          ratio = std::max(beta_[i], 0.0) / alpha;
          to_upper = false;
        } else if (alpha < -options_.pivot_tolerance && std::isfinite(upper_[basis_[i]])) {
          ratio = std::max(upper_[basis_[i]] - beta_[i], 0.0) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        bool take = false;
        if (ratio < best - 1e-12) {
          take = true;
        } else if (ratio <= best + 1e-12) {
          take = bland ? basis_[i] < basis_[leave] : std::abs(alpha) > std::abs(best_alpha);
        }
        if (take) {
          best = ratio;
          best_alpha = alpha;
          leave = i;
          leave_to_upper = to_upper;
        }
      }

      const double flip = upper_[j];
      if (leave < 0 && !std::isfinite(flip)) return Outcome::kUnbounded;
      if (flip <= best) {
        // The entering variable reaches its other bound first.
        beta_ -= direction * flip * t_.col(j);
        at_upper_[j] = !at_upper_[j];
        degenerate_run = 0;
        continue;
      }

      const double step = best;
      beta_ -= direction * step * t_.col(j);
      const double entering_value = at_upper_[j] ? upper_[j] - step : step;
      const Eigen::Index leaving = basis_[leave];
      is_basic_[leaving] = false;
      at_upper_[leaving] = leave_to_upper;
      is_basic_[j] = true;
      at_upper_[j] = false;
      basis_[leave] = j;
      beta_[leave] = entering_value;
      Pivot(leave, j);
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    }
  }

  // Degenerate pivot of column j into row r (used to drive artificials out).
  void ForcePivot(Eigen::Index r, Eigen::Index j) {
    const double value = at_upper_[j] ? upper_[j] : 0.0;
    const Eigen::Index leaving = basis_[r];
    is_basic_[leaving] = false;
    at_upper_[leaving] = false;
    is_basic_[j] = true;
    at_upper_[j] = false;
    basis_[r] = j;
    // Moving z_j by zero keeps the other basics; z_j keeps its bound value.
    beta_[r] = value;
    Pivot(r, j);
  }

  Vector Values() const {
    Vector z = Vector::Zero(t_.cols());
    for (Eigen::Index j = 0; j < t_.cols(); ++j) {
      if (!is_basic_[j] && at_upper_[j]) z[j] = upper_[j];
    }
    for (Eigen::Index i = 0; i < t_.rows(); ++i) z[basis_[i]] = beta_[i];
    return z;
  }

  const Matrix& tableau() const { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }
  bool is_basic(Eigen::Index j) const { return is_basic_[j]; }
  int iterations() const { return iterations_; }

 private:
  Eigen::Index ChooseEntering(bool bland) const {
    Eigen::Index chosen = -1;
    double best = 0.0;
    for (Eigen::Index j = 0; j < t_.cols(); ++j) {
      if (is_basic_[j] || !allowed_[j] || upper_[j] <= 0.0) continue;
      const double gain = at_upper_[j] ? d_[j] : -d_[j];
      if (gain <= options_.optimality_tolerance) continue;
      if (bland) return j;
      if (gain > best) {
        best = gain;
        chosen = j;
      }
    }
    return chosen;
  }

  void Pivot(Eigen::Index r, Eigen::Index j) {
    const double pivot = t_(r, j);
    t_.row(r) /= pivot;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double factor = t_(i, j);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    const double dj = d_[j];
    if (dj != 0.0) d_ -= dj * t_.row(r).transpose();
  }

  Matrix t_;
  Vector beta_;
  std::vector<double> upper_;
  LpOptions options_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::vector<bool> allowed_;
  Vector cost_;
  Vector d_;
  int iterations_ = 0;
};

void Validate(const LpProblem& p) {
  const Eigen::Index n = p.c.size();
  if (p.A_eq.cols() != n && !(p.A_eq.rows() == 0)) {
    throw InvalidArgument("A_eq column count does not match c");
  }
  if (p.A_eq.rows() != p.b_eq.size()) throw InvalidArgument("A_eq row count does not match b_eq");
  if (p.lower.size() != n || p.upper.size() != n) {
    throw InvalidArgument("bound vectors must match the variable count");
  }
  if (!p.c.allFinite() || !p.A_eq.allFinite() || !p.b_eq.allFinite()) {
    throw InvalidArgument("LP data must be finite");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) || p.lower[j] == kInf ||
        p.upper[j] == -kInf) {
      throw InvalidArgument("invalid bound for variable " + std::to_string(j));
    }
  }
}

}  // namespace

LpResult LpSolve(const LpProblem& problem, const LpOptions& options) {
  Validate(problem);
  const Eigen::Index n = problem.c.size();
  const Eigen::Index m = problem.b_eq.size();
  const Matrix a = problem.A_eq.rows() == 0 ? Matrix(0, n) : problem.A_eq;

  LpResult result;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (problem.lower[j] > problem.upper[j]) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }

  // Working variables.
  std::vector<WorkingVar> vars;
  Vector rhs = problem.b_eq;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    if (std::isfinite(lo)) {
      vars.push_back({MapKind::kShift, j, hi - lo});
      if (m > 0) rhs -= a.col(j) * lo;
    } else if (std::isfinite(hi)) {
      vars.push_back({MapKind::kNegate, j, kInf});
      if (m > 0) rhs -= a.col(j) * hi;
    } else {
      vars.push_back({MapKind::kPlus, j, kInf});
      vars.push_back({MapKind::kMinus, j, kInf});
    }
  }
  const Eigen::Index nw = static_cast<Eigen::Index>(vars.size());
  Matrix working(m, nw);
  Vector working_cost(nw);
  for (Eigen::Index k = 0; k < nw; ++k) {
    const double sign =
        (vars[k].kind == MapKind::kNegate || vars[k].kind == MapKind::kMinus) ? -1.0 : 1.0;
    if (m > 0) working.col(k) = sign * a.col(vars[k].original);
    working_cost[k] = sign * problem.c[vars[k].original];
  }
  Vector row_sign = Vector::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rhs[i] < 0.0) row_sign[i] = -1.0;
  }
  const Matrix signed_working = row_sign.asDiagonal() * working;
  const Vector signed_rhs = row_sign.cwiseProduct(rhs);

  Matrix tableau(m, nw + m);
  tableau << signed_working, Matrix::Identity(m, m);
  std::vector<double> upper(nw + m, kInf);
  for (Eigen::Index k = 0; k < nw; ++k) upper[k] = vars[k].upper;

  BoundedSimplex simplex(tableau, signed_rhs, upper, options);
  for (Eigen::Index i = 0; i < m; ++i) simplex.SetBasis(i, nw + i);

  // Phase 1: drive the artificials to zero.
  Vector phase1_cost = Vector::Zero(nw + m);
  phase1_cost.tail(m).setOnes();
  auto outcome = simplex.Run(phase1_cost);
  result.iterations = simplex.iterations();
  if (outcome == BoundedSimplex::Outcome::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  const Vector phase1_values = simplex.Values();
  const double infeasibility = phase1_values.tail(m).sum();
  const double scale = std::max(1.0, signed_rhs.size() > 0 ? signed_rhs.cwiseAbs().maxCoeff() : 0.0);
  if (infeasibility > options.feasibility_tolerance * scale) {
    result.status = LpStatus::kInfeasible;
    return result;
  }

  // Artificials are fixed at zero from here on; basic ones are pivoted out
  // where the row allows it (rows that do not are redundant).
  for (Eigen::Index i = 0; i < m; ++i) {
    simplex.SetUpper(nw + i, 0.0);
    simplex.Forbid(nw + i);
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    if (simplex.basis()[r] < nw) continue;
    Eigen::Index best = -1;
    double best_abs = 1e-7;
    for (Eigen::Index k = 0; k < nw; ++k) {
      if (simplex.is_basic(k)) continue;
      const double v = std::abs(simplex.tableau()(r, k));
      if (v > best_abs) {
        best_abs = v;
        best = k;
      }
    }
    if (best >= 0) simplex.ForcePivot(r, best);
  }

  // Phase 2.
  Vector phase2_cost = Vector::Zero(nw + m);
  phase2_cost.head(nw) = working_cost;
  outcome = simplex.Run(phase2_cost);
  result.iterations = simplex.iterations();
  if (outcome == BoundedSimplex::Outcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  if (outcome == BoundedSimplex::Outcome::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }

  // Refine basic values and compute multipliers from the basis matrix
  // itself rather than the accumulated tableau.
  Vector z = simplex.Values();
  Vector y = Vector::Zero(m);
  if (m > 0) {
    Matrix full(m, nw + m);
    full << signed_working, Matrix::Identity(m, m);
    Matrix basis_matrix(m, m);
    Vector basis_cost(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      basis_matrix.col(i) = full.col(simplex.basis()[i]);
      basis_cost[i] = phase2_cost[simplex.basis()[i]];
    }
    Eigen::FullPivLU<Matrix> lu(basis_matrix);
    if (lu.isInvertible()) {
      Vector nonbasic_part = signed_rhs;
      for (Eigen::Index k = 0; k < nw + m; ++k) {
        if (!simplex.is_basic(k) && z[k] != 0.0) nonbasic_part -= full.col(k) * z[k];
      }
      const Vector refined = lu.solve(nonbasic_part);
      Vector candidate = z;
      for (Eigen::Index i = 0; i < m; ++i) candidate[simplex.basis()[i]] = refined[i];
      const double old_residual = (full * z - signed_rhs).cwiseAbs().maxCoeff();
      const double new_residual = (full * candidate - signed_rhs).cwiseAbs().maxCoeff();
      if (new_residual <= old_residual) z = candidate;
      const Eigen::FullPivLU<Matrix> lu_t(basis_matrix.transpose());
      y = row_sign.cwiseProduct(lu_t.solve(basis_cost));
    } else {
      // Fall back on the tableau: its artificial block holds B^{-1}.
      const Matrix inverse = simplex.tableau().rightCols(m);
      Vector yy = Vector::Zero(m);
      for (Eigen::Index i = 0; i < m; ++i) yy += basis_cost[i] * inverse.row(i).transpose();
      y = row_sign.cwiseProduct(yy);
    }
  }

  // Map back to the original variables.
  Vector x(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = 0.0;
  for (Eigen::Index k = 0; k < nw; ++k) {
    const WorkingVar& v = vars[k];
    const double lo = problem.lower[v.original];
    const double hi = problem.upper[v.original];
    switch (v.kind) {
      case MapKind::kShift:
        x[v.original] = lo + std::max(z[k], 0.0);
        if (std::isfinite(hi)) x[v.original] = std::min(x[v.original], hi);
        break;
      case MapKind::kNegate:
        x[v.original] = hi - std::max(z[k], 0.0);
        break;
      case MapKind::kPlus:
        x[v.original] += z[k];
        break;
      case MapKind::kMinus:
        x[v.original] -= z[k];
        break;
    }
  }

  result.status = LpStatus::kOptimal;
  result.x = x;
  result.objective = problem.c.dot(x);
  result.duals = y;
  result.reduced_costs = problem.c - (m > 0 ? Vector(a.transpose() * y) : Vector::Zero(n));
  double bound = m > 0 ? problem.b_eq.dot(y) : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r = result.reduced_costs[j];
    if (std::abs(r) <= options.optimality_tolerance &&
        (!std::isfinite(problem.lower[j]) || !std::isfinite(problem.upper[j]))) {
      continue;
    }
    const double at = r >= 0.0 ? problem.lower[j] : problem.upper[j];
    if (!std::isfinite(at)) {
      bound = -kInf;
      break;
    }
    bound += r * at;
  }
  result.dual_bound = bound;
  double residual = m > 0 ? (a * x - problem.b_eq).cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    residual = std::max(residual, problem.lower[j] - x[j]);
    residual = std::max(residual, x[j] - problem.upper[j]);
  }
  result.primal_residual = residual;
  return result;
}

}  // namespace dpcp
