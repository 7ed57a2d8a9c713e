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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dpcp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

// Thrown on violated preconditions (shapes, domains, invalid configs).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computation cannot complete on valid input.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Module-wide tolerances. Every check in the library reads these, so a
// caller may loosen or tighten them in one place.
struct Tolerances {
  double unit_vector = 1e-12;
  double dataset_column = 1e-9;
  double orthonormal = 1e-10;
  double min_column_norm = 1e-12;
};

const Tolerances& DefaultTolerances();

enum class Label : unsigned char { kUnknown = 0, kInlier = 1, kOutlier = 2 };

const char* LabelName(Label label);
Label ParseLabel(const std::string& name);

// A point of S^{D-1}. Construction validates the norm, so any instance
// held by the library is known to be unit length.
class UnitVector {
 public:
  explicit UnitVector(Vector entries,
                      double tolerance = DefaultTolerances().unit_vector);

  // Divides by the Euclidean norm; throws if the norm is (numerically) zero.
  static UnitVector Normalize(const Vector& v);

  const Vector& vec() const { return entries_; }
  Eigen::Index dim() const { return entries_.size(); }
  double operator[](Eigen::Index i) const { return entries_[i]; }

 private:
  Vector entries_;
};

// Column-major collection of L unit vectors in R^D, optionally labeled.
class Dataset {
 public:
  Dataset() = default;

  // Columns must already be unit norm.
  Dataset(Matrix columns, std::optional<std::vector<Label>> labels = {},
          double tolerance = DefaultTolerances().dataset_column);

  // Normalizes every column; columns with norm below min_column_norm are
  // rejected with InvalidArgument rather than blown up.
  static Dataset FromRaw(const Matrix& raw,
                         std::optional<std::vector<Label>> labels = {});

  // Concatenates [inliers outliers] with matching labels.
  static Dataset FromParts(const Matrix& inliers, const Matrix& outliers);

  Eigen::Index dim() const { return columns_.rows(); }
  Eigen::Index size() const { return columns_.cols(); }
  bool empty() const { return columns_.cols() == 0; }
  const Matrix& columns() const { return columns_; }
  auto column(Eigen::Index j) const { return columns_.col(j); }

  bool labeled() const { return labels_.has_value(); }
  const std::vector<Label>& labels() const;
  Eigen::Index inlier_count() const;
  Eigen::Index outlier_count() const;

  // Columns with the given label, in dataset order.
  Matrix Select(Label label) const;
  Matrix inliers() const { return Select(Label::kInlier); }
  Matrix outliers() const { return Select(Label::kOutlier); }

 private:
  Matrix columns_{0, 0};
  std::optional<std::vector<Label>> labels_;
};

// Orthonormal inlier basis (D x d) and/or orthonormal normals (D x c).
class SubspaceModel {
 public:
  SubspaceModel() = default;
  SubspaceModel(std::optional<Matrix> basis, std::optional<Matrix> normals,
                double tolerance = DefaultTolerances().orthonormal);

  static SubspaceModel FromBasis(const Matrix& basis);
  static SubspaceModel FromNormals(const Matrix& normals);

  // Fills in whichever side is missing with an orthonormal complement.
  SubspaceModel Completed() const;

  bool has_basis() const { return basis_.has_value(); }
  bool has_normals() const { return normals_.has_value(); }
  const Matrix& basis() const;
  const Matrix& normals() const;
  Eigen::Index ambient_dim() const;

 private:
  std::optional<Matrix> basis_;
  std::optional<Matrix> normals_;
};

// phi is measured from S, theta from its orthogonal complement.
struct AngleReading {
  double phi_from_S = 0.0;
  double theta_from_complement = 0.0;
};

// Elementwise sign with sign(0) = 0.
IntVector SignVec(const Vector& v);
Vector SignVecReal(const Vector& v);

// f(b) = ||X^T b||_1.
double Objective(const Dataset& data, const UnitVector& b);

// (I - b b^T) X sign(X^T b), sign(0) = 0.
Vector RiemannianSubgradient(const Dataset& data, const UnitVector& b);

AngleReading PrincipalAngle(const SubspaceModel& subspace, const UnitVector& b);

// Largest principal angle between span(a) and span(b); both orthonormal.
double MaxPrincipalAngle(const Matrix& a, const Matrix& b);

// Orthonormal basis of the complement of span(q), q orthonormal (D x k).
Matrix OrthonormalComplement(const Matrix& q);

// Orthonormalizes columns; returns the numerical rank alongside.
std::pair<Matrix, Eigen::Index> Orthonormalize(const Matrix& a,
                                               double rank_tolerance = 1e-10);

struct OracleResult {
  UnitVector b;
  double objective;
};

// Exhaustive minimizer of f over a deterministic grid: a uniform half-circle
// of `resolution` angles for D = 2, a Fibonacci lattice of `resolution`
// points for D = 3.
OracleResult GridOracle(const Dataset& data, int resolution);

}  // namespace dpcp
