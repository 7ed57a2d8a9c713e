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

#include "dpcp/kernels.h"

#include <cmath>

namespace dpcp::kernels::serial {

void Project(const Matrix& x, const Vector& b, Vector& out) {
  out.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out[j] = x.col(j).dot(b);
  }
}

double L1(const Matrix& x, const Vector& b) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    total += std::abs(x.col(j).dot(b));
  }
  return total;
}

SignedSum SignedColumnSum(const Matrix& x, const Vector& projections) {
  SignedSum result{Vector::Zero(x.rows()), 0.0};
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double p = projections[j];
    if (p > 0.0) {
      result.sum += x.col(j);
    } else if (p < 0.0) {
      result.sum -= x.col(j);
    }
    result.l1 += std::abs(p);
  }
  return result;
}

Matrix WeightedGram(const Matrix& x, const Vector& weights) {
  Matrix gram = Matrix::Zero(x.rows(), x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    gram.noalias() += weights[j] * x.col(j) * x.col(j).transpose();
  }
  return gram;
}

void AbsScores(const Matrix& x, const Vector& n, Vector& out) {
  out.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out[j] = std::abs(x.col(j).dot(n));
  }
}

std::int64_t CountWithin(const Matrix& x, const Matrix& v, double threshold) {
  std::int64_t count = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Vector residual = x.col(j) - v * (v.transpose() * x.col(j));
    if (residual.norm() <= threshold) ++count;
  }
  return count;
}

}  // namespace dpcp::kernels::serial
