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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

namespace dpcp {
namespace {

template <typename Fn>
std::string ErrorOf(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST(ReadCloudAsciiTest, ParsesPointsCommentsAndReflectance) {
  std::istringstream in("# header\n1 2 3 0.5\n\n  4 5 6 0.25\n");
  const PointCloud cloud = ReadCloudAscii(in);
  ASSERT_EQ(cloud.size(), 2u);
  EXPECT_EQ(cloud.points[1], Eigen::Vector3d(4, 5, 6));
  ASSERT_TRUE(cloud.reflectance.has_value());
  EXPECT_FLOAT_EQ((*cloud.reflectance)[0], 0.5f);

  std::istringstream plain("1 2 3\n");
  EXPECT_FALSE(ReadCloudAscii(plain).reflectance.has_value());
}

TEST(ReadCloudAsciiTest, ErrorsNameTheLine) {
  std::istringstream bad_number("1 2 3\n1 x 3\n");
  EXPECT_NE(ErrorOf([&] { ReadCloudAscii(bad_number); }).find("line 2"), std::string::npos);
  std::istringstream wrong_arity("1 2\n");
  EXPECT_NE(ErrorOf([&] { ReadCloudAscii(wrong_arity); }).find("line 1"), std::string::npos);
  std::istringstream mixed("1 2 3 4\n1 2 3\n");
  EXPECT_NE(ErrorOf([&] { ReadCloudAscii(mixed); }).find("line 2"), std::string::npos);
  std::istringstream not_finite("1 2 inf\n");
  EXPECT_NE(ErrorOf([&] { ReadCloudAscii(not_finite); }).find("line 1"), std::string::npos);
}

TEST(ReadCloudBinaryTest, RoundTripAndTruncation) {
  PointCloud cloud;
  cloud.points = {{1.5, -2.0, 3.25}, {0.0, 0.0, 0.0}};
  cloud.reflectance = std::vector<float>{0.5f, 1.0f};
  std::stringstream buffer;
  WriteCloudBinary(cloud, buffer);
  EXPECT_EQ(buffer.str().size(), 32u);
  const PointCloud back = ReadCloudBinary(buffer);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.points[0], cloud.points[0]);
  EXPECT_FLOAT_EQ((*back.reflectance)[1], 1.0f);

  std::istringstream truncated(std::string(17, '\0'));
  EXPECT_NE(ErrorOf([&] { ReadCloudBinary(truncated); }).find("byte offset 16"), std::string::npos);

  std::string record(16, '\0');
  const float nan = std::nanf("");
  std::memcpy(&record[4], &nan, sizeof(float));
  std::istringstream with_nan(record);
  EXPECT_NE(ErrorOf([&] { ReadCloudBinary(with_nan); }).find("byte offset 4"), std::string::npos);
}

TEST(LabelSidecarTest, RoundTripAndValidation) {
  const std::vector<Label> labels = {Label::kInlier, Label::kOutlier, Label::kInlier};
  std::stringstream buffer;
  WriteLabelSidecar(labels, buffer);
  EXPECT_EQ(buffer.str(), std::string("\0\1\0", 3));
  EXPECT_EQ(ReadLabelSidecar(buffer, 3), labels);
  std::istringstream short_file(std::string("\0", 1));
  EXPECT_THROW(ReadLabelSidecar(short_file, 2), RuntimeError);
  std::istringstream bad_byte(std::string("\2", 1));
  EXPECT_THROW(ReadLabelSidecar(bad_byte, 1), RuntimeError);
}

TEST(HomogenizeTest, Examples) {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {3, 0, 0}, {50, 0, 0}};
  const HomogenizedCloud h = Homogenize(cloud);
  ASSERT_EQ(h.data.size(), 2);
  EXPECT_EQ(h.kept, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(h.data.columns().col(0).isApprox(Eigen::Vector4d(0, 0, 0, 1)));
  EXPECT_NEAR(h.data.columns()(0, 1), 3.0 / std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(h.data.columns()(3, 1), 1.0 / std::sqrt(10.0), 1e-15);

  const HomogenizedCloud all = Homogenize(cloud, {.prefilter = std::nullopt});
  EXPECT_EQ(all.data.size(), 3);
}

TEST(HomogenizeTest, RoundTripRecoversCoordinates) {
  PointCloud cloud;
  for (double scale : {1e-3, 1.0, 1e3, 1e6}) cloud.points.push_back({scale, -0.5 * scale, 0.25 * scale});
  for (double weight : {1.0, 10.0}) {
    const HomogenizedCloud h = Homogenize(cloud, {.prefilter = std::nullopt, .weight = weight});
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Eigen::Vector3d back = Dehomogenize(h.data.columns().col(static_cast<Eigen::Index>(i)), weight);
      EXPECT_LE((back - cloud.points[i]).norm(), 1e-9 * std::max(1.0, cloud.points[i].norm()));
    }
  }
}

TEST(HomogenizeTest, LabelsPassThroughAndErrors) {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {100, 0, 0}, {1, 1, 0}};
  cloud.labels = std::vector<Label>{Label::kInlier, Label::kOutlier, Label::kOutlier};
  const HomogenizedCloud h = Homogenize(cloud);
  ASSERT_TRUE(h.data.labeled());
  EXPECT_EQ(h.data.labels(), (std::vector<Label>{Label::kInlier, Label::kOutlier}));

  PointCloud far;
  far.points = {{100, 0, 0}};
  EXPECT_THROW(Homogenize(far), InvalidArgument);
  EXPECT_THROW(Homogenize(cloud, {.weight = 0.0}), InvalidArgument);
  EXPECT_THROW(Dehomogenize(Eigen::Vector4d(1, 0, 0, 0)), InvalidArgument);
}

TEST(DetectPlaneTest, SyntheticPlaneIsSeparated) {
  const PointCloud cloud = SamplePlaneScene({.inliers = 600, .outliers = 400, .noise = 0.0, .seed = 3});
  const HomogenizedCloud h = Homogenize(cloud);
  const PlaneDetection det = DetectPlane(h.data, {.method = PlaneMethod::kPsgm, .threshold = 1e-6});
  ASSERT_TRUE(det.auc.has_value());
  EXPECT_GE(*det.auc, 0.99);
  // The recovered normal is the z axis of the homogeneous space.
  EXPECT_GE(std::abs(det.normal4[2]), 1.0 - 1e-6);
  EXPECT_EQ(det.method, "psgm");
  EXPECT_EQ(static_cast<std::size_t>(det.scores.size()), det.inlier_mask.size());
  std::int64_t count = 0;
  for (Eigen::Index j = 0; j < det.scores.size(); ++j) {
    EXPECT_EQ(det.inlier_mask[j], det.scores[j] <= det.threshold);
    count += det.inlier_mask[j];
  }
  EXPECT_EQ(count, det.inlier_count);
}

TEST(DetectPlaneTest, EveryMethodRuns) {
  const PointCloud cloud = SamplePlaneScene({.inliers = 200, .outliers = 100, .noise = 0.0, .seed = 4});
  const HomogenizedCloud h = Homogenize(cloud);
  for (PlaneMethod method : {PlaneMethod::kPsgm, PlaneMethod::kAlp, PlaneMethod::kIrls, PlaneMethod::kRansac}) {
    DetectOptions options{.method = method, .threshold = 1e-6};
    options.ransac_iterations = 500;
    const PlaneDetection det = DetectPlane(h.data, options);
    EXPECT_EQ(det.method, PlaneMethodName(method));
    EXPECT_EQ(ParsePlaneMethod(det.method), method);
    ASSERT_TRUE(det.auc.has_value());
    EXPECT_GE(*det.auc, 0.99) << det.method;
  }
  EXPECT_THROW(ParsePlaneMethod("lasso"), InvalidArgument);
}

// Road-scale footprints need a larger homogeneous weight: at weight 1 the
// spectral start lands in a spurious basin.
TEST(DetectPlaneTest, WideFootprintNeedsLargerHomogeneousWeight) {
  const Box road;  // 80 m x 40 m
  const PointCloud cloud = SamplePlaneScene({.inliers = 600, .outliers = 400, .noise = 0.0, .box = road, .seed = 4});
  const PlaneDetection unit = DetectPlane(Homogenize(cloud).data, {.threshold = 1e-6});
  const PlaneDetection weighted = DetectPlane(Homogenize(cloud, {.weight = 10.0}).data, {.threshold = 1e-6});
  EXPECT_LT(*unit.auc, 0.9);
  EXPECT_GE(*weighted.auc, 0.99);
}

TEST(DetectPlaneTest, SingleClassIsFlagged) {
  PointCloud cloud = SamplePlaneScene({.inliers = 100, .outliers = 0, .noise = 0.0, .seed = 5});
  const HomogenizedCloud h = Homogenize(cloud);
  const PlaneDetection det = DetectPlane(h.data, {.threshold = 1e-9});
  EXPECT_LE(det.scores.maxCoeff(), 1e-9);
  EXPECT_FALSE(det.auc.has_value());
  EXPECT_FALSE(det.flags.empty());
}

TEST(DetectPlaneTest, ScoresAreRotationInvariant) {
  const PointCloud cloud = SamplePlaneScene({.inliers = 300, .outliers = 200, .noise = 0.01, .seed = 6});
  const Eigen::Matrix3d rotation =
      (Eigen::AngleAxisd(0.4, Eigen::Vector3d(1, 2, 3).normalized())).toRotationMatrix();
  PointCloud rotated = cloud;
  for (Eigen::Vector3d& p : rotated.points) p = rotation * p;
  const HomogenizeOptions options{.prefilter = std::nullopt};
  const PlaneDetection a = DetectPlane(Homogenize(cloud, options).data, {.threshold = 0.003});
  const PlaneDetection b = DetectPlane(Homogenize(rotated, options).data, {.threshold = 0.003});
  std::vector<double> sa(a.scores.data(), a.scores.data() + a.scores.size());
  std::vector<double> sb(b.scores.data(), b.scores.data() + b.scores.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  ASSERT_EQ(sa.size(), sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) EXPECT_NEAR(sa[i], sb[i], 1e-6);
}

TEST(SamplePlaneSceneTest, LabelsCountsAndBox) {
  const PlaneSceneSpec spec{.inliers = 70, .outliers = 30, .noise = 0.01, .seed = 8};
  const PointCloud cloud = SamplePlaneScene(spec);
  ASSERT_EQ(cloud.size(), 100u);
  ASSERT_TRUE(cloud.labels.has_value());
  EXPECT_EQ(std::count(cloud.labels->begin(), cloud.labels->end(), Label::kInlier), 70);
  for (const Eigen::Vector3d& p : cloud.points) EXPECT_TRUE(spec.box.Contains(p));
  const PointCloud again = SamplePlaneScene(spec);
  EXPECT_EQ(again.points, cloud.points);
}

}  // namespace
}  // namespace dpcp
