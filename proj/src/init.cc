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

#include "dpcp/init.h"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dpcp/random.h"

namespace dpcp {
namespace {

void FixSign(Vector& v) {
  const double cutoff = 1e-12 * v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > cutoff) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

void CheckSymmetric(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw InvalidArgument("eigen-solver needs a non-empty square matrix");
  }
}

void Finish(const Matrix& a, EigenResult& result) {
  FixSign(result.vector);
  result.eigenvalue = result.vector.dot(a * result.vector);
  result.residual = (a * result.vector - result.eigenvalue * result.vector).norm();
}

}  // namespace

UnitVector RandomInit(int D, std::uint64_t seed) {
  if (D < 2) throw InvalidArgument("random init needs D >= 2");
  Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(Stream::kInit)}));
  return UnitVector::Normalize(rng.SphereVector(D));
}

EigenResult BottomEigenpairInverseIteration(const Matrix& a, double tolerance,
                                            int max_iters) {
  CheckSymmetric(a);
  const Eigen::Index n = a.rows();
  // A tiny relative regularization keeps the factorization finite when A
  // is exactly singular; it does not move the eigenvectors.
  const double scale = std::max(a.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  Eigen::LDLT<Matrix> ldlt(a + 1e-14 * scale * Matrix::Identity(n, n));
  if (ldlt.info() != Eigen::Success) throw RuntimeError("LDLT factorization failed");

  EigenResult result;
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  for (int it = 1; it <= max_iters; ++it) {
    Vector next = ldlt.solve(v);
    const double norm = next.norm();
    if (!std::isfinite(norm) || norm == 0.0) throw RuntimeError("inverse iteration broke down");
    next /= norm;
    if (next.dot(v) < 0.0) next = -next;
    const double change = (next - v).norm();
    v = next;
    result.iterations = it;
    if (change <= tolerance) break;
  }
  result.vector = v;
  Finish(a, result);
  return result;
}

EigenResult BottomEigenpair(const Matrix& a, double tolerance, int max_iters) {
  CheckSymmetric(a);
  if (a.rows() > kDenseEigenLimit) {
    return BottomEigenpairInverseIteration(a, tolerance, max_iters);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw RuntimeError("symmetric eigensolver failed");
  EigenResult result;
  result.vector = solver.eigenvectors().col(0);
  Finish(a, result);
  return result;
}

EigenResult SpectralInitDetailed(const Dataset& data, const ExecutionPolicy& policy) {
  if (data.empty()) throw InvalidArgument("spectral init needs at least one column");
  const Matrix gram = kernels::WeightedGram(data.columns(), Vector::Ones(data.size()), policy);
  return BottomEigenpair(gram);
}

UnitVector SpectralInit(const Dataset& data, const ExecutionPolicy& policy) {
  return UnitVector::Normalize(SpectralInitDetailed(data, policy).vector);
}

double ExpectedSinTheta0(int d, int D) {
  if (d < 1 || d >= D) throw InvalidArgument("need 1 <= d < D");
  return std::exp(std::lgamma((d + 1) / 2.0) + std::lgamma(D / 2.0) -
                  std::lgamma(d / 2.0) - std::lgamma((D + 1) / 2.0));
}

std::pair<double, double> ExpectedSinTheta0Bracket(int d, int D) {
  if (d < 1 || d >= D) throw InvalidArgument("need 1 <= d < D");
  return {std::sqrt((d - 0.5) / D), std::sqrt(d / (D - 0.5))};
}

double SpectralAngleBound(const Dataset& data, Eigen::Index d) {
  const Matrix outliers = data.outliers();
  const Matrix inliers = data.inliers();
  if (d < 1 || d > data.dim()) throw InvalidArgument("invalid subspace dimension");
  if (inliers.cols() < d) throw InvalidArgument("fewer inliers than the subspace dimension");
  double spread = 0.0;
  if (outliers.cols() > 0) {
    const Vector s = Eigen::JacobiSVD<Matrix>(outliers).singularValues();
    const double smallest = data.dim() <= s.size() ? s[data.dim() - 1] : 0.0;
    spread = s[0] * s[0] - smallest * smallest;
  }
  const Vector sx = Eigen::JacobiSVD<Matrix>(inliers).singularValues();
  return std::sqrt(spread) / sx[d - 1];
}

}  // namespace dpcp
