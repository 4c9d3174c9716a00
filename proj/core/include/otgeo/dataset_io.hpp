// Copyright 2026 The otgeo Authors
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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"

namespace otgeo {

// Dataset files.
//
// CSV: header x0..x{d-1} followed by either a single integer column `y`
// (hard labels) or y0..y{C-1} (soft label rows). Values are written in
// shortest round-trip form.
//
// Binary, all integers little-endian:
//   "OTDS" | u32 version = 1 | u8 flags (bit 0: soft labels) | u64 n |
//   u32 d | u32 C | n*d f32 features, row-major |
//   n u32 class ids (hard) or n*C f32 label rows (soft)
// Soft rows are renormalized in double precision on load.
enum class DatasetFormat { kCsv, kBinary };

inline constexpr std::uint32_t kBinaryVersion = 1;

// ".csv" (any case) selects CSV; everything else binary.
DatasetFormat format_for_path(const std::filesystem::path& path);

void write_csv(const LabeledDataset& ds, std::ostream& out);
void write_binary(const LabeledDataset& ds, std::ostream& out);
LabeledDataset read_csv(std::istream& in, std::string id);
LabeledDataset read_binary(std::istream& in, std::string id);

// Throws kIoError on unreadable or malformed files; the dataset id is the
// file stem.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  std::optional<DatasetFormat> format = std::nullopt);
LabeledDataset load_dataset(const std::filesystem::path& path);

// Features of a dataset file, or of a CSV holding only x columns.
Eigen::MatrixXd load_features(const std::filesystem::path& path);

}  // namespace otgeo
