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

#include "dpcp/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace dpcp {

const Tolerances& DefaultTolerances() {
  static const Tolerances tolerances;
  return tolerances;
}

const char* LabelName(Label label) {
  switch (label) {
    case Label::kInlier:
      return "in";
    case Label::kOutlier:
      return "out";
    case Label::kUnknown:
      break;
  }
  return "unk";
}

Label ParseLabel(const std::string& name) {
  if (name == "in") return Label::kInlier;
  if (name == "out") return Label::kOutlier;
  if (name == "unk") return Label::kUnknown;
  throw InvalidArgument("unknown label '" + name + "'");
}

UnitVector::UnitVector(Vector entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw InvalidArgument("unit vector needs dimension >= 2");
  }
  if (!entries_.allFinite() || std::abs(entries_.norm() - 1.0) > tolerance) {
    throw InvalidArgument("vector is not unit norm");
  }
}

UnitVector UnitVector::Normalize(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > DefaultTolerances().min_column_norm) || !std::isfinite(norm)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  return UnitVector(v / norm);
}

Dataset::Dataset(Matrix columns, std::optional<std::vector<Label>> labels,
                 double tolerance)
    : columns_(std::move(columns)), labels_(std::move(labels)) {
  if (labels_ && static_cast<Eigen::Index>(labels_->size()) != columns_.cols()) {
    throw InvalidArgument("label count does not match column count");
  }
  for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
    const double norm = columns_.col(j).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tolerance) {
      throw InvalidArgument("dataset column " + std::to_string(j) +
                            " is not unit norm");
    }
  }
}

Dataset Dataset::FromRaw(const Matrix& raw,
                         std::optional<std::vector<Label>> labels) {
  Matrix normalized = raw;
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const double norm = raw.col(j).norm();
    if (!std::isfinite(norm) || norm < DefaultTolerances().min_column_norm) {
      throw InvalidArgument("column " + std::to_string(j) +
                            " has (near) zero or non-finite norm");
    }
    normalized.col(j) /= norm;
  }
  return Dataset(std::move(normalized), std::move(labels));
}

Dataset Dataset::FromParts(const Matrix& inliers, const Matrix& outliers) {
  if (inliers.cols() > 0 && outliers.cols() > 0 &&
      inliers.rows() != outliers.rows()) {
    throw InvalidArgument("inlier and outlier dimensions differ");
  }
  const Eigen::Index rows = inliers.cols() > 0 ? inliers.rows() : outliers.rows();
  Matrix all(rows, inliers.cols() + outliers.cols());
  all << inliers, outliers;
  std::vector<Label> labels(inliers.cols(), Label::kInlier);
  labels.insert(labels.end(), outliers.cols(), Label::kOutlier);
  return Dataset(std::move(all), std::move(labels));
}

const std::vector<Label>& Dataset::labels() const {
  if (!labels_) throw InvalidArgument("dataset is unlabeled");
  return *labels_;
}

Eigen::Index Dataset::inlier_count() const {
  const auto& l = labels();
  return std::count(l.begin(), l.end(), Label::kInlier);
}

Eigen::Index Dataset::outlier_count() const {
  const auto& l = labels();
  return std::count(l.begin(), l.end(), Label::kOutlier);
}

Matrix Dataset::Select(Label label) const {
  const auto& l = labels();
  const auto count = std::count(l.begin(), l.end(), label);
  Matrix out(dim(), count);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (l[j] == label) out.col(k++) = columns_.col(j);
  }
  return out;
}

namespace {

void CheckOrthonormal(const Matrix& q, double tolerance, const char* what) {
  const Matrix gram = q.transpose() * q;
  if ((gram - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff() >
      tolerance) {
    throw InvalidArgument(std::string(what) + " columns are not orthonormal");
  }
}

}  // namespace

SubspaceModel::SubspaceModel(std::optional<Matrix> basis,
                             std::optional<Matrix> normals, double tolerance)
    : basis_(std::move(basis)), normals_(std::move(normals)) {
  if (!basis_ && !normals_) {
    throw InvalidArgument("subspace model needs a basis or normals");
  }
  if (basis_ && basis_->cols() > 0) CheckOrthonormal(*basis_, tolerance, "basis");
  if (normals_ && normals_->cols() > 0) {
    CheckOrthonormal(*normals_, tolerance, "normal");
  }
  if (basis_ && normals_) {
    if (basis_->rows() != normals_->rows()) {
      throw InvalidArgument("basis and normals differ in ambient dimension");
    }
    if (basis_->cols() > 0 && normals_->cols() > 0 &&
        (basis_->transpose() * *normals_).cwiseAbs().maxCoeff() > tolerance) {
      throw InvalidArgument("normals are not orthogonal to the basis");
    }
  }
}

SubspaceModel SubspaceModel::FromBasis(const Matrix& basis) {
  return SubspaceModel(basis, std::nullopt);
}

SubspaceModel SubspaceModel::FromNormals(const Matrix& normals) {
  return SubspaceModel(std::nullopt, normals);
}

SubspaceModel SubspaceModel::Completed() const {
  if (basis_ && normals_) return *this;
  if (basis_) return SubspaceModel(*basis_, OrthonormalComplement(*basis_));
  return SubspaceModel(OrthonormalComplement(*normals_), *normals_);
}

const Matrix& SubspaceModel::basis() const {
  if (!basis_) throw InvalidArgument("subspace model has no basis");
  return *basis_;
}

const Matrix& SubspaceModel::normals() const {
  if (!normals_) throw InvalidArgument("subspace model has no normals");
  return *normals_;
}

Eigen::Index SubspaceModel::ambient_dim() const {
  return basis_ ? basis_->rows() : normals_->rows();
}

IntVector SignVec(const Vector& v) {
  IntVector s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s[i] = (v[i] > 0.0) - (v[i] < 0.0);
  }
  return s;
}

Vector SignVecReal(const Vector& v) { return SignVec(v).cast<double>(); }

namespace {

void CheckDims(const Dataset& data, const UnitVector& b) {
  if (!data.empty() && data.dim() != b.dim()) {
    throw InvalidArgument("dimension mismatch between dataset and vector");
  }
}

}  // namespace

double Objective(const Dataset& data, const UnitVector& b) {
  CheckDims(data, b);
  if (data.empty()) return 0.0;
  return (data.columns().transpose() * b.vec()).cwiseAbs().sum();
}

Vector RiemannianSubgradient(const Dataset& data, const UnitVector& b) {
  CheckDims(data, b);
  if (data.empty()) return Vector::Zero(b.dim());
  const Vector g = data.columns() * SignVecReal(data.columns().transpose() * b.vec());
  return g - b.vec() * b.vec().dot(g);
}

AngleReading PrincipalAngle(const SubspaceModel& subspace, const UnitVector& b) {
  const Matrix& basis = subspace.basis();
  if (basis.rows() != b.dim()) {
    throw InvalidArgument("dimension mismatch between subspace and vector");
  }
  const Vector parallel_coords = basis.transpose() * b.vec();
  const double parallel = parallel_coords.norm();
  const double perpendicular = (b.vec() - basis * parallel_coords).norm();
  // atan2 keeps full relative precision at both ends of [0, pi/2].
  AngleReading reading;
  reading.phi_from_S = std::atan2(perpendicular, parallel);
  reading.theta_from_complement = std::atan2(parallel, perpendicular);
  return reading;
}

double MaxPrincipalAngle(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("dimension mismatch");
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  // Angles from the smaller span into the larger one. Sine and cosine are
  // read off separately so that both tiny and near-right angles keep full
  // relative precision.
  const Matrix& small = a.cols() <= b.cols() ? a : b;
  const Matrix& big = a.cols() <= b.cols() ? b : a;
  const Matrix overlap = big.transpose() * small;
  const Matrix residual = small - big * overlap;
  const double cosine = Eigen::JacobiSVD<Matrix>(overlap).singularValues().minCoeff();
  const double sine = Eigen::JacobiSVD<Matrix>(residual).singularValues().maxCoeff();
  return std::atan2(sine, cosine);
}

std::pair<Matrix, Eigen::Index> Orthonormalize(const Matrix& a,
                                               double rank_tolerance) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(rank_tolerance);
  const Eigen::Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  return {q.leftCols(a.cols()), rank};
}

Matrix OrthonormalComplement(const Matrix& q) {
  const Eigen::Index dim = q.rows();
  const Eigen::Index k = q.cols();
  if (k == 0) return Matrix::Identity(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(q);
  const Matrix full = qr.householderQ() * Matrix::Identity(dim, dim);
  return full.rightCols(dim - k);
}

OracleResult GridOracle(const Dataset& data, int resolution) {
  if (resolution < 100) throw InvalidArgument("resolution must be >= 100");
  const Eigen::Index dim = data.empty() ? 2 : data.dim();
  if (dim != 2 && dim != 3) {
    throw InvalidArgument("grid oracle supports D = 2 or D = 3 only");
  }
  const Matrix& x = data.columns();
  auto evaluate = [&](const Vector& b) {
    return data.empty() ? 0.0 : (x.transpose() * b).cwiseAbs().sum();
  };

  Vector best(dim);
  double best_value = std::numeric_limits<double>::infinity();
  Vector b(dim);
  for (int i = 0; i < resolution; ++i) {
    if (dim == 2) {
      // f(b) = f(-b), so the half circle [0, pi) covers every direction.
      const double t = std::numbers::pi * i / resolution;
      b << std::cos(t), std::sin(t);
    } else {
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      const double z = 1.0 - (2.0 * i + 1.0) / resolution;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = golden * i;
      b << r * std::cos(t), r * std::sin(t), z;
    }
    const double value = evaluate(b);
    if (value < best_value) {
      best_value = value;
      best = b;
    }
  }
  return {UnitVector::Normalize(best), best_value};
}

}  // namespace dpcp
