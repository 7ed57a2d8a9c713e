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

// Seeded randomness with output pinned across platforms and releases.
//
// The engine is std::mt19937_64, whose output sequence the C++ standard fixes
// bit-for-bit. The standard distributions are implementation-defined, so the
// conversions to uniform doubles, integers and normals live here instead.
//
// Stream derivation: every consumer draws from its own generator seeded by
// DeriveSeed(root, tag, index...), a SplitMix64 chain over the arguments.
// Stream layout version: kRandomStreamVersion.

#include <cstdint>
#include <initializer_list>
#include <random>

#include "dpcp/core.h"

namespace dpcp {

inline constexpr int kRandomStreamVersion = 1;

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

// Named stream tags used across the library.
enum class Stream : std::uint64_t {
  kSubspace = 1,
  kInliers = 2,
  kOutliers = 3,
  kPermutation = 4,
  kInit = 5,
  kProbe = 6,
  kRestart = 7,
  kRansac = 8,
  kTrial = 9,
  kPointCloud = 10,
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform on {0, ..., n - 1} by rejection; n > 0.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Standard normal via the Marsaglia polar method.
  double Normal();

  Vector NormalVector(Eigen::Index n);
  Matrix NormalMatrix(Eigen::Index rows, Eigen::Index cols);
  // Uniform on S^{n-1}.
  Vector SphereVector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dpcp
