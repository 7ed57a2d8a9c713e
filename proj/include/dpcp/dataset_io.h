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

// Dataset exchange formats.
//
// CSV: header "d0,d1,...,d{D-1},label", then one dataset column per row;
// label is one of in, out, unk.
//
// Binary container, all integers little-endian:
//   magic "DPCP" | version u16 | D u32 | L u32 | label flag u8 |
//   D*L float64 column-major | L label bytes (only when flag = 1)
// Label bytes: 0 unknown, 1 inlier, 2 outlier.

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "dpcp/core.h"

namespace dpcp {

inline constexpr std::uint16_t kBinaryFormatVersion = 1;

void WriteDatasetCsv(const Dataset& data, std::ostream& out);
Dataset ReadDatasetCsv(std::istream& in);

void WriteDatasetBinary(const Dataset& data, std::ostream& out);
Dataset ReadDatasetBinary(std::istream& in);

// Dispatches on the extension: ".csv" or anything else as binary.
void SaveDataset(const Dataset& data, const std::filesystem::path& path);
Dataset LoadDataset(const std::filesystem::path& path);

}  // namespace dpcp
