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
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "dpcp/random.h"
#include "dpcp/synth.h"

namespace dpcp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(RandomInitTest, DeterministicAndUnit) {
  const UnitVector a = RandomInit(7, 42);
  const UnitVector b = RandomInit(7, 42);
  EXPECT_TRUE(a.vec() == b.vec());
  EXPECT_NEAR(a.vec().norm(), 1.0, 1e-14);
  EXPECT_FALSE(a.vec() == RandomInit(7, 43).vec());
  EXPECT_THROW(RandomInit(1, 0), InvalidArgument);
}

TEST(ExpectedSinTheta0Test, ClosedFormsInLowDimension) {
  EXPECT_NEAR(ExpectedSinTheta0(1, 2), 2.0 / kPi, 1e-14);
  // On S^2: E|z| = 1/2 and E sqrt(1 - z^2) = pi/4 with z uniform on [-1, 1].
  EXPECT_NEAR(ExpectedSinTheta0(1, 3), 0.5, 1e-14);
  EXPECT_NEAR(ExpectedSinTheta0(2, 3), kPi / 4, 1e-14);
}

TEST(ExpectedSinTheta0Test, LiesInsideBracket) {
  for (int D = 2; D <= 60; ++D) {
    for (int d = 1; d < D; ++d) {
      const auto [lo, hi] = ExpectedSinTheta0Bracket(d, D);
      const double value = ExpectedSinTheta0(d, D);
      EXPECT_LE(lo, value) << d << " " << D;
      EXPECT_LE(value, hi) << d << " " << D;
    }
  }
}

TEST(RandomInitTest, MeanSquaredSineIsDOverD) {
  // ||P_S b||^2 ~ Beta(d/2, (D-d)/2) with mean d/D and variance
  // 2 d (D-d) / (D^2 (D+2)).
  const int D = 10, d = 4, n = 50000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += RandomInit(D, i).vec().head(d).squaredNorm();
  const double var = 2.0 * d * (D - d) / (D * D * (D + 2.0));
  EXPECT_NEAR(sum / n, static_cast<double>(d) / D, 3.0 * std::sqrt(var / n));
}

TEST(BottomEigenpairTest, AgreesWithDenseOracle) {
  Rng rng(3);
  for (int D : {2, 5, 20, 50}) {
    const Matrix a = rng.NormalMatrix(D, 3 * D);
    const Matrix gram = a * a.transpose();
    const EigenResult r = BottomEigenpair(gram);
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(gram);
    EXPECT_NEAR(r.eigenvalue, oracle.eigenvalues()[0], 1e-10 * oracle.eigenvalues()[D - 1]);
    EXPECT_NEAR(std::abs(r.vector.dot(oracle.eigenvectors().col(0))), 1.0, 1e-10);
    EXPECT_LE(r.residual, 1e-8 * oracle.eigenvalues()[D - 1]);
  }
}

TEST(BottomEigenpairTest, InverseIterationMatchesDensePath) {
  Rng rng(4);
  const Matrix a = rng.NormalMatrix(12, 40);
  const Matrix gram = a * a.transpose();
  const EigenResult dense = BottomEigenpair(gram);
  const EigenResult inverse = BottomEigenpairInverseIteration(gram);
  EXPECT_GT(inverse.iterations, 0);
  EXPECT_NEAR(inverse.eigenvalue, dense.eigenvalue, 1e-9);
  EXPECT_LT((inverse.vector - dense.vector).norm(), 1e-8);
}

TEST(BottomEigenpairTest, LargeMatrixUsesInverseIteration) {
  const Eigen::Index n = kDenseEigenLimit + 4;
  Vector diag = Vector::LinSpaced(n, 1.0, 10.0);
  diag[7] = 0.25;
  const EigenResult r = BottomEigenpair(diag.asDiagonal().toDenseMatrix());
  EXPECT_GT(r.iterations, 0);
  EXPECT_NEAR(r.eigenvalue, 0.25, 1e-12);
  EXPECT_NEAR(std::abs(r.vector[7]), 1.0, 1e-10);
}

TEST(BottomEigenpairTest, SingularMatrix) {
  Matrix a = Matrix::Zero(300, 300);
  a.diagonal().setConstant(2.0);
  a(5, 5) = 0.0;
  const EigenResult r = BottomEigenpair(a);
  EXPECT_NEAR(r.vector[5], 1.0, 1e-12);
  EXPECT_NEAR(r.eigenvalue, 0.0, 1e-12);
}

TEST(SpectralInitTest, ExactNullVector) {
  Rng rng(5);
  Matrix x = rng.NormalMatrix(5, 30);
  x.row(4).setZero();
  const Dataset data = Dataset::FromRaw(x);
  const UnitVector b = SpectralInit(data);
  EXPECT_NEAR(b[4], 1.0, 1e-12);  // sign convention: first significant entry positive
  EXPECT_NEAR(b.vec().norm(), 1.0, 1e-12);
}

TEST(SpectralInitTest, DeterministicOnEqualInput) {
  const SyntheticInstance inst = SampleSpherical({.D = 9, .d = 6, .N = 50, .M = 50, .seed = 6});
  EXPECT_TRUE(SpectralInit(inst.data).vec() == SpectralInit(inst.data).vec());
  EXPECT_TRUE(SpectralInit(inst.data, ExecutionPolicy::Serial()).vec() ==
              SpectralInit(inst.data, ExecutionPolicy::Serial()).vec());
}

TEST(SpectralInitTest, MinimizesL2ObjectiveAgainstDenseOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticInstance inst = SampleSpherical({.D = 20, .d = 15, .N = 100, .M = 80, .seed = seed});
    const UnitVector b = SpectralInit(inst.data);
    const Matrix& x = inst.data.columns();
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(x * x.transpose());
    EXPECT_NEAR((x.transpose() * b.vec()).squaredNorm(), oracle.eigenvalues()[0],
                1e-9 * oracle.eigenvalues()[19]);
  }
}

TEST(SpectralInitTest, RespectsSingularValueAngleBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticInstance inst = SampleSpherical({.D = 10, .d = 9, .N = 200, .M = 50, .seed = seed});
    const UnitVector b = SpectralInit(inst.data);
    const double sin_theta = (inst.truth.model.basis().transpose() * b.vec()).norm();
    const Vector so = Eigen::JacobiSVD<Matrix>(inst.data.outliers()).singularValues();
    const Vector sx = Eigen::JacobiSVD<Matrix>(inst.data.inliers()).singularValues();
    const double bound = std::sqrt(so[0] * so[0] - so[9] * so[9]) / sx[8];
    EXPECT_NEAR(SpectralAngleBound(inst.data, 9), bound, 1e-12);
    EXPECT_LE(sin_theta, bound);
  }
}

TEST(SpectralInitTest, EmptyDatasetThrows) {
  EXPECT_THROW(SpectralInit(Dataset(Matrix(3, 0))), InvalidArgument);
}

}  // namespace
}  // namespace dpcp
