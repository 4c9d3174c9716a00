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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/error.hpp"

namespace otgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCategory category);

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Standardizes every matrix in place with per-feature mean and standard
// deviation pooled over all of them. Constant features are only centered.
void zscore_normalize(const std::vector<Eigen::MatrixXd*>& features);

// One-hot argmax labels, lowest class on ties.
LabeledDataset harden(const LabeledDataset& ds);

}  // namespace otgeo::cli
