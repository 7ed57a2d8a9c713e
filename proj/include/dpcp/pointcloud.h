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

// 3D point clouds as a hyperplane problem: each point (x, y, z) becomes the
// unit vector (x, y, z, w) / ||(x, y, z, w)|| in R^4, so an affine plane
// becomes a linear hyperplane whose normal any DPCP solver can recover.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dpcp/altsolvers.h"
#include "dpcp/core.h"
#include "dpcp/psgm.h"
#include "dpcp/ransac.h"

namespace dpcp {

struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::optional<std::vector<float>> reflectance;
  std::optional<std::vector<Label>> labels;

  std::size_t size() const { return points.size(); }
};

enum class CloudFormat {
  kAsciiXyz,  // "x y z [r]" per line, whitespace separated
  kBinF32x4,  // little-endian float32 quadruplets (x, y, z, reflectance)
};

PointCloud ReadCloudAscii(std::istream& in);
PointCloud ReadCloudBinary(std::istream& in);
PointCloud LoadCloud(const std::filesystem::path& path, CloudFormat format);
void WriteCloudBinary(const PointCloud& cloud, std::ostream& out);

// One byte per point: 0 inlier, 1 outlier.
std::vector<Label> ReadLabelSidecar(std::istream& in, std::size_t expected_count);
std::vector<Label> LoadLabelSidecar(const std::filesystem::path& path, std::size_t expected_count);
void WriteLabelSidecar(const std::vector<Label>& labels, std::ostream& out);

struct Box {
  Eigen::Vector3d lo{-40.0, -20.0, -3.0};
  Eigen::Vector3d hi{40.0, 20.0, 3.0};

  bool Contains(const Eigen::Vector3d& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
};

struct HomogenizeOptions {
  std::optional<Box> prefilter = Box{};
  double weight = 1.0;  // homogeneous coordinate w
};

struct HomogenizedCloud {
  Dataset data;                     // 4 x L, unit columns, labels passed through
  std::vector<std::size_t> kept;    // indices into the input cloud
};

HomogenizedCloud Homogenize(const PointCloud& cloud, const HomogenizeOptions& options = {});

// Inverse map of one homogenized column: divide by the 4th coordinate and
// rescale by the weight.
Eigen::Vector3d Dehomogenize(const Vector& column, double weight = 1.0);

enum class PlaneMethod { kPsgm, kAlp, kIrls, kRansac };

const char* PlaneMethodName(PlaneMethod method);
PlaneMethod ParsePlaneMethod(const std::string& name);

struct DetectOptions {
  PlaneMethod method = PlaneMethod::kPsgm;
  // Score threshold for the inlier mask (and the RANSAC consensus test).
  double threshold = 1e-3;
  // PSGM: spectral start, piecewise-geometric steps, mu0 from one
  // backtracking line search when auto_mu0 is set.
  SolveOptions psgm{.schedule = StepSchedule::PiecewiseGeometric(1e-2), .max_iters = 200};
  bool auto_mu0 = true;
  AlpSolveOptions alp;
  IrlsOptions irls;
  // RANSAC iteration budget; when unset, the wall-clock budget is used.
  std::optional<std::int64_t> ransac_iterations;
  std::optional<std::int64_t> ransac_wall_nanos;
  std::uint64_t seed = 0;
};

struct PlaneDetection {
  UnitVector normal4;
  Vector scores;                 // |normal4^T x_j|
  std::vector<bool> inlier_mask; // score <= threshold
  double threshold = 0.0;
  std::int64_t inlier_count = 0;
  std::int64_t wall_nanos = 0;
  int iterations = 0;
  std::string method;
  std::optional<double> auc;
  std::optional<double> f1;
  std::vector<std::string> flags;
};

PlaneDetection DetectPlane(const Dataset& data, const DetectOptions& options);

// Synthetic scene: inliers on the plane z = 0 inside the box footprint with
// Gaussian height noise, outliers uniform in the box.
//
// The default footprint is 10 m x 10 m. With homogeneous weight 1, much
// wider footprints push most unit columns far from the homogeneous axis and
// the spectral start falls into a spurious basin; raise
// HomogenizeOptions::weight for road-scale scenes.
struct PlaneSceneSpec {
  std::size_t inliers = 500;
  std::size_t outliers = 500;
  double noise = 0.01;  // meters, standard deviation of inlier height
  Box box{{-5.0, -5.0, -2.5}, {5.0, 5.0, 2.5}};
  std::uint64_t seed = 0;
};

PointCloud SamplePlaneScene(const PlaneSceneSpec& spec);

}  // namespace dpcp
