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

#include "dpcp/dataset_io.h"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dpcp {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary dataset I/O assumes a little-endian host");

template <typename T>
void WriteLE(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T ReadLE(std::istream& in, const char* what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw RuntimeError(std::string("truncated dataset file while reading ") + what);
  }
  return value;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  return fields;
}

}  // namespace

void WriteDatasetCsv(const Dataset& data, std::ostream& out) {
  const Eigen::Index dim = data.empty() ? 0 : data.dim();
  for (Eigen::Index i = 0; i < dim; ++i) out << 'd' << i << ',';
  out << "label\n";
  out.precision(17);
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) out << data.columns()(i, j) << ',';
    out << LabelName(data.labeled() ? data.labels()[j] : Label::kUnknown) << '\n';
  }
}

Dataset ReadDatasetCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw RuntimeError("empty CSV dataset");
  const auto header = SplitCsv(line);
  if (header.empty() || header.back() != "label") {
    throw RuntimeError("CSV header must end with a 'label' field");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(header.size()) - 1;
  std::vector<double> values;
  std::vector<Label> labels;
  bool any_known = false;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto fields = SplitCsv(line);
    if (static_cast<Eigen::Index>(fields.size()) != dim + 1) {
      throw RuntimeError("CSV line " + std::to_string(line_number) +
                         ": expected " + std::to_string(dim + 1) + " fields");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(fields[i], &used));
        if (used != fields[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw RuntimeError("CSV line " + std::to_string(line_number) +
                           ": malformed number '" + fields[i] + "'");
      }
    }
    labels.push_back(ParseLabel(fields.back()));
    any_known = any_known || labels.back() != Label::kUnknown;
  }
  const Eigen::Index count = static_cast<Eigen::Index>(labels.size());
  Matrix columns = Eigen::Map<Matrix>(values.data(), dim, count);
  if (!any_known) return Dataset(std::move(columns));
  return Dataset(std::move(columns), std::move(labels));
}

void WriteDatasetBinary(const Dataset& data, std::ostream& out) {
  out.write("DPCP", 4);
  WriteLE<std::uint16_t>(out, kBinaryFormatVersion);
  WriteLE<std::uint32_t>(out, static_cast<std::uint32_t>(data.empty() ? 0 : data.dim()));
  WriteLE<std::uint32_t>(out, static_cast<std::uint32_t>(data.size()));
  WriteLE<std::uint8_t>(out, data.labeled() ? 1 : 0);
  const Matrix& x = data.columns();
  out.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(sizeof(double) * x.size()));
  if (data.labeled()) {
    for (Label label : data.labels()) WriteLE<std::uint8_t>(out, static_cast<std::uint8_t>(label));
  }
}

Dataset ReadDatasetBinary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::memcmp(magic.data(), "DPCP", 4) != 0) {
    throw RuntimeError("not a DPCP binary dataset (bad magic)");
  }
  const auto version = ReadLE<std::uint16_t>(in, "version");
  if (version != kBinaryFormatVersion) {
    throw RuntimeError("unsupported DPCP binary version " + std::to_string(version));
  }
  const auto dim = ReadLE<std::uint32_t>(in, "D");
  const auto count = ReadLE<std::uint32_t>(in, "L");
  const auto flag = ReadLE<std::uint8_t>(in, "label flag");
  if (flag > 1) throw RuntimeError("invalid label flag");
  Matrix columns(dim, count);
  if (!in.read(reinterpret_cast<char*>(columns.data()),
               static_cast<std::streamsize>(sizeof(double) * columns.size()))) {
    throw RuntimeError("truncated dataset payload");
  }
  if (flag == 0) return Dataset(std::move(columns));
  std::vector<Label> labels(count);
  for (auto& label : labels) {
    const auto byte = ReadLE<std::uint8_t>(in, "labels");
    if (byte > 2) throw RuntimeError("invalid label byte");
    label = static_cast<Label>(byte);
  }
  return Dataset(std::move(columns), std::move(labels));
}

void SaveDataset(const Dataset& data, const std::filesystem::path& path) {
  const bool csv = path.extension() == ".csv";
  std::ofstream out(path, csv ? std::ios::out : std::ios::binary);
  if (!out) throw RuntimeError("cannot open " + path.string() + " for writing");
  if (csv) {
    WriteDatasetCsv(data, out);
  } else {
    WriteDatasetBinary(data, out);
  }
  if (!out) throw RuntimeError("failed writing " + path.string());
}

Dataset LoadDataset(const std::filesystem::path& path) {
  const bool csv = path.extension() == ".csv";
  std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
  if (!in) throw RuntimeError("cannot open " + path.string());
  return csv ? ReadDatasetCsv(in) : ReadDatasetBinary(in);
}

}  // namespace dpcp
