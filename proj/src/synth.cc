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

#include "dpcp/synth.h"

#include <cmath>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "dpcp/random.h"

namespace dpcp {

void SphericalModelSpec::Validate() const {
  if (D < 2) throw InvalidArgument("ambient dimension must be >= 2");
  if (d < 1 || d >= D) throw InvalidArgument("need 1 <= d < D");
  if (N < 0 || M < 0) throw InvalidArgument("counts must be non-negative");
  if (N + M < 1) throw InvalidArgument("need at least one column");
}

SyntheticInstance SampleSpherical(const SphericalModelSpec& spec) {
  spec.Validate();

  Rng subspace_rng(DeriveSeed(spec.seed, {static_cast<std::uint64_t>(Stream::kSubspace)}));
  const Matrix gaussian = subspace_rng.NormalMatrix(spec.D, spec.d);
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  const Matrix basis = qr.householderQ() * Matrix::Identity(spec.D, spec.d);

  const Eigen::Index total = spec.N + spec.M;
  Matrix columns(spec.D, total);
  std::vector<Label> labels(total);

  Rng inlier_rng(DeriveSeed(spec.seed, {static_cast<std::uint64_t>(Stream::kInliers)}));
  for (Eigen::Index j = 0; j < spec.N; ++j) {
    const Vector coords = inlier_rng.SphereVector(spec.d);
    Vector x = basis * coords;
    columns.col(j) = x / x.norm();
    labels[j] = Label::kInlier;
  }
  Rng outlier_rng(DeriveSeed(spec.seed, {static_cast<std::uint64_t>(Stream::kOutliers)}));
  for (Eigen::Index j = 0; j < spec.M; ++j) {
    columns.col(spec.N + j) = outlier_rng.SphereVector(spec.D);
    labels[spec.N + j] = Label::kOutlier;
  }

  // Fisher-Yates with the pinned index generator.
  std::vector<Eigen::Index> order(total);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng perm_rng(DeriveSeed(spec.seed, {static_cast<std::uint64_t>(Stream::kPermutation)}));
  for (Eigen::Index i = total - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(perm_rng.UniformIndex(i + 1));
    std::swap(order[i], order[j]);
  }
  Matrix shuffled(spec.D, total);
  std::vector<Label> shuffled_labels(total);
  for (Eigen::Index i = 0; i < total; ++i) {
    shuffled.col(i) = columns.col(order[i]);
    shuffled_labels[i] = labels[order[i]];
  }

  return {Dataset(std::move(shuffled), std::move(shuffled_labels)),
          GroundTruth{SubspaceModel(basis, OrthonormalComplement(basis)), spec}};
}

Eigen::Index OutlierRatioToM(Eigen::Index N, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw InvalidArgument("outlier ratio must lie in [0, 1)");
  }
  if (N < 0) throw InvalidArgument("N must be non-negative");
  return static_cast<Eigen::Index>(std::llround(ratio * static_cast<double>(N) / (1.0 - ratio)));
}

SubspaceModel TruthFromLabels(const Dataset& data, double rank_tolerance) {
  const Matrix inliers = data.inliers();
  if (inliers.cols() == 0) throw InvalidArgument("dataset has no inliers");
  Eigen::JacobiSVD<Matrix> svd(inliers, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > rank_tolerance * s[0]) ++rank;
  if (rank >= data.dim()) {
    throw InvalidArgument("inliers span the whole ambient space");
  }
  const Matrix u = svd.matrixU();
  return SubspaceModel(Matrix(u.leftCols(rank)), Matrix(u.rightCols(data.dim() - rank)));
}

}  // namespace dpcp
