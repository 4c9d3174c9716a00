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

#include "otgeo/dataset.hpp"

namespace otgeo::cli {

// Scatter plot of the first two feature coordinates (the first one twice for
// 1-D data), colored by argmax label.
void write_svg(const LabeledDataset& ds, std::ostream& out);
void save_svg(const LabeledDataset& ds, const std::filesystem::path& path);

}  // namespace otgeo::cli
