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

#include "dpcp/pointcloud.h"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dpcp/eval.h"
#include "dpcp/init.h"
#include "dpcp/random.h"

namespace dpcp {

static_assert(std::endian::native == std::endian::little,
              "binary point-cloud I/O assumes a little-endian host");

PointCloud ReadCloudAscii(std::istream& in) {
  PointCloud cloud;
  std::vector<float> reflectance;
  std::optional<bool> has_reflectance;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        values.push_back(v);
      } catch (const std::exception&) {
        throw RuntimeError("line " + std::to_string(line_number) + ": malformed number '" +
                           token + "'");
      }
    }
    if (values.size() != 3 && values.size() != 4) {
      throw RuntimeError("line " + std::to_string(line_number) + ": expected 3 or 4 values, got " +
                         std::to_string(values.size()));
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        throw RuntimeError("line " + std::to_string(line_number) + ": non-finite value");
      }
    }
    const bool with_r = values.size() == 4;
    if (has_reflectance && *has_reflectance != with_r) {
      throw RuntimeError("line " + std::to_string(line_number) +
                         ": reflectance present on some lines but not others");
    }
    has_reflectance = with_r;
    cloud.points.emplace_back(values[0], values[1], values[2]);
    if (with_r) reflectance.push_back(static_cast<float>(values[3]));
  }
  if (has_reflectance.value_or(false)) cloud.reflectance = std::move(reflectance);
  return cloud;
}

PointCloud ReadCloudBinary(std::istream& in) {
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  constexpr std::size_t kRecord = 4 * sizeof(float);
  if (bytes.size() % kRecord != 0) {
    throw RuntimeError("truncated record at byte offset " +
                       std::to_string(bytes.size() / kRecord * kRecord));
  }
  PointCloud cloud;
  std::vector<float> reflectance;
  const std::size_t count = bytes.size() / kRecord;
  cloud.points.reserve(count);
  reflectance.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    float record[4];
    std::memcpy(record, bytes.data() + i * kRecord, kRecord);
    for (int k = 0; k < 4; ++k) {
      if (!std::isfinite(record[k])) {
        throw RuntimeError("non-finite value at byte offset " +
                           std::to_string(i * kRecord + k * sizeof(float)));
      }
    }
    cloud.points.emplace_back(record[0], record[1], record[2]);
    reflectance.push_back(record[3]);
  }
  cloud.reflectance = std::move(reflectance);
  return cloud;
}

PointCloud LoadCloud(const std::filesystem::path& path, CloudFormat format) {
  std::ifstream in(path, format == CloudFormat::kBinF32x4 ? std::ios::binary : std::ios::in);
  if (!in) throw RuntimeError("cannot open " + path.string());
  return format == CloudFormat::kBinF32x4 ? ReadCloudBinary(in) : ReadCloudAscii(in);
}

void WriteCloudBinary(const PointCloud& cloud, std::ostream& out) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const float record[4] = {static_cast<float>(cloud.points[i].x()),
                             static_cast<float>(cloud.points[i].y()),
                             static_cast<float>(cloud.points[i].z()),
                             cloud.reflectance ? (*cloud.reflectance)[i] : 0.0f};
    out.write(reinterpret_cast<const char*>(record), sizeof(record));
  }
}

std::vector<Label> ReadLabelSidecar(std::istream& in, std::size_t expected_count) {
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() != expected_count) {
    throw RuntimeError("label sidecar has " + std::to_string(bytes.size()) + " entries, expected " +
                       std::to_string(expected_count));
  }
  std::vector<Label> labels(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const auto byte = static_cast<unsigned char>(bytes[i]);
    if (byte > 1) throw RuntimeError("invalid label byte at offset " + std::to_string(i));
    labels[i] = byte == 0 ? Label::kInlier : Label::kOutlier;
  }
  return labels;
}

std::vector<Label> LoadLabelSidecar(const std::filesystem::path& path, std::size_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open " + path.string());
  return ReadLabelSidecar(in, expected_count);
}

void WriteLabelSidecar(const std::vector<Label>& labels, std::ostream& out) {
  for (Label label : labels) {
    if (label == Label::kUnknown) throw InvalidArgument("sidecar labels must be known");
    out.put(label == Label::kInlier ? 0 : 1);
  }
}

HomogenizedCloud Homogenize(const PointCloud& cloud, const HomogenizeOptions& options) {
  if (!(options.weight > 0.0) || !std::isfinite(options.weight)) {
    throw InvalidArgument("homogeneous weight must be positive");
  }
  if (cloud.labels && cloud.labels->size() != cloud.size()) {
    throw InvalidArgument("label count does not match point count");
  }
  HomogenizedCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!cloud.points[i].allFinite()) throw InvalidArgument("point " + std::to_string(i) + " is not finite");
    if (options.prefilter && !options.prefilter->Contains(cloud.points[i])) continue;
    out.kept.push_back(i);
  }
  if (out.kept.empty()) throw InvalidArgument("no points left after the prefilter");
  Matrix columns(4, static_cast<Eigen::Index>(out.kept.size()));
  std::vector<Label> labels;
  for (std::size_t k = 0; k < out.kept.size(); ++k) {
    const Eigen::Vector3d& p = cloud.points[out.kept[k]];
    Eigen::Vector4d h(p.x(), p.y(), p.z(), options.weight);
    columns.col(static_cast<Eigen::Index>(k)) = h / h.norm();
    if (cloud.labels) labels.push_back((*cloud.labels)[out.kept[k]]);
  }
  out.data = cloud.labels ? Dataset(std::move(columns), std::move(labels))
                          : Dataset(std::move(columns));
  return out;
}

Eigen::Vector3d Dehomogenize(const Vector& column, double weight) {
  if (column.size() != 4) throw InvalidArgument("homogeneous column must have 4 entries");
  if (column[3] == 0.0) throw InvalidArgument("point at infinity");
  return column.head<3>() * (weight / column[3]);
}

const char* PlaneMethodName(PlaneMethod method) {
  switch (method) {
    case PlaneMethod::kPsgm:
      return "psgm";
    case PlaneMethod::kAlp:
      return "alp";
    case PlaneMethod::kIrls:
      return "irls";
    case PlaneMethod::kRansac:
      return "ransac";
  }
  return "unknown";
}

PlaneMethod ParsePlaneMethod(const std::string& name) {
  if (name == "psgm") return PlaneMethod::kPsgm;
  if (name == "alp") return PlaneMethod::kAlp;
  if (name == "irls") return PlaneMethod::kIrls;
  if (name == "ransac") return PlaneMethod::kRansac;
  throw InvalidArgument("unknown method '" + name + "'");
}

PlaneDetection DetectPlane(const Dataset& data, const DetectOptions& options) {
  if (data.empty() || data.dim() != 4) throw InvalidArgument("plane detection needs data in R^4");
  if (!(options.threshold >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  const auto start = std::chrono::steady_clock::now();

  Vector normal;
  int iterations = 0;
  std::vector<std::string> flags;
  switch (options.method) {
    case PlaneMethod::kPsgm: {
      const UnitVector b0 = SpectralInit(data);
      SolveOptions solve = options.psgm;
      if (options.auto_mu0) {
        solve.schedule.mu0 = BacktrackingInitialStep(data, b0, solve.schedule.line_search);
      }
      const SolveReport report = Solve(data, b0, solve);
      normal = report.final_b.vec();
      iterations = report.iters;
      flags = report.flags;
      break;
    }
    case PlaneMethod::kAlp: {
      const AlpSolveReport report = AlpSolve(data, SpectralInit(data), options.alp);
      normal = report.report.final_b.vec();
      iterations = report.report.iters;
      flags = report.report.flags;
      break;
    }
    case PlaneMethod::kIrls: {
      const IrlsReport report = IrlsSolve(data, SpectralInit(data), options.irls);
      normal = report.report.final_b.vec();
      iterations = report.report.iters;
      flags = report.report.flags;
      break;
    }
    case PlaneMethod::kRansac: {
      RansacOptions ransac;
      ransac.d = 3;
      ransac.threshold = options.threshold > 0.0 ? options.threshold : 1e-12;
      ransac.max_iterations = options.ransac_iterations;
      ransac.max_wall_nanos = options.ransac_wall_nanos;
      if (!ransac.max_iterations && !ransac.max_wall_nanos) ransac.max_iterations = 200;
      ransac.seed = options.seed;
      const RansacResult result = Ransac(data, ransac);
      normal = result.model.normals().col(0);
      iterations = static_cast<int>(result.iterations);
      if (!result.deterministic) flags.push_back("wall-clock budget: not deterministic");
      break;
    }
  }

  PlaneDetection detection{.normal4 = UnitVector::Normalize(normal)};
  detection.method = PlaneMethodName(options.method);
  detection.threshold = options.threshold;
  detection.iterations = iterations;
  detection.flags = std::move(flags);
  kernels::AbsScores(data.columns(), detection.normal4.vec(), detection.scores,
                     DefaultExecutionPolicy());
  detection.inlier_mask.resize(data.size());
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    detection.inlier_mask[j] = detection.scores[j] <= options.threshold;
    detection.inlier_count += detection.inlier_mask[j] ? 1 : 0;
  }
  detection.wall_nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(
                             std::chrono::steady_clock::now() - start).count();
  if (data.labeled()) {
    const Eigen::Index outliers = data.outlier_count();
    const Eigen::Index inliers = data.inlier_count();
    if (outliers > 0 && inliers > 0 && outliers + inliers == data.size()) {
      detection.auc = RocFromScores(detection.scores, data.labels()).auc;
      detection.f1 = F1AtThreshold(detection.scores, data.labels(), options.threshold);
    } else {
      detection.flags.push_back("single-class or partially labeled data: AUC undefined");
    }
  }
  return detection;
}

PointCloud SamplePlaneScene(const PlaneSceneSpec& spec) {
  if (!(spec.noise >= 0.0)) throw InvalidArgument("noise must be non-negative");
  if (spec.inliers + spec.outliers == 0) throw InvalidArgument("scene needs at least one point");
  Rng rng(DeriveSeed(spec.seed, {static_cast<std::uint64_t>(Stream::kPointCloud)}));
  const Box& box = spec.box;
  std::vector<Eigen::Vector3d> points;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < spec.inliers; ++i) {
    const double z = std::clamp(spec.noise * rng.Normal(), box.lo.z(), box.hi.z());
    points.emplace_back(rng.Uniform(box.lo.x(), box.hi.x()), rng.Uniform(box.lo.y(), box.hi.y()), z);
    labels.push_back(Label::kInlier);
  }
  for (std::size_t i = 0; i < spec.outliers; ++i) {
    points.emplace_back(rng.Uniform(box.lo.x(), box.hi.x()), rng.Uniform(box.lo.y(), box.hi.y()),
                        rng.Uniform(box.lo.z(), box.hi.z()));
    labels.push_back(Label::kOutlier);
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformIndex(i + 1)]);
  }
  PointCloud cloud;
  cloud.labels.emplace();
  for (std::size_t i : order) {
    cloud.points.push_back(points[i]);
    cloud.labels->push_back(labels[i]);
  }
  return cloud;
}

}  // namespace dpcp
