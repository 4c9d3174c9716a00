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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "otgeo/label_geometry.hpp"
#include "otgeo/ot.hpp"
#include "otgeo/otdd.hpp"
#include "otgeo/projection.hpp"

namespace otgeo::cli {

// Settings shared by every command. Config files are flat key = value text
// with the keys solver, epsilon, max_iters, label_method, batch_size, seed,
// grid_resolution, class_cap and exact_max_cells. The command line allows
// much larger exact problems than the library default.
struct RunConfig {
  OtSolver solver = OtSolver::kSinkhorn;
  std::optional<double> epsilon;
  int max_iters = 20000;
  LabelMethod label_method = LabelMethod::kExact;
  Eigen::Index batch_size = 0;
  std::uint64_t seed = 0;
  int grid_resolution = 7;
  std::size_t class_cap = 500;
  std::size_t exact_max_cells = 1'000'000;

  OtddConfig otdd() const;
  ProjectionConfig projection() const;
};

// Applies the file's settings on top of `base`. Throws kBadSpec.
RunConfig parse_run_config(std::istream& in, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

OtSolver parse_solver(const std::string& name);
LabelMethod parse_label_method(const std::string& name);
const char* solver_name(OtSolver solver);

}  // namespace otgeo::cli
