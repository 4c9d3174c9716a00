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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"

namespace otgeo {

// n_per_class draws from each N(means[c], covs[c]); class id = component
// index and rows are grouped by class. Deterministic in the seed.
// Throws kNotPSD or kShapeMismatch.
LabeledDataset gaussian_mixture(Eigen::Index n_per_class,
                                const std::vector<Eigen::VectorXd>& means,
                                const std::vector<Eigen::MatrixXd>& covs,
                                std::uint64_t seed, std::string id = "gmm");

// Component means on a rows x cols lattice with the given spacing, row-major
// starting at the origin.
std::vector<Eigen::VectorXd> grid_means(int rows, int cols, double spacing);

// Isotropic rows x cols lattice mixture, one class per cell.
LabeledDataset checkerboard(int rows, int cols, double spacing, double variance,
                            Eigen::Index n_per_class, std::uint64_t seed,
                            std::string id = "checkerboard");

// Translates every sample. With `relabel`, class c becomes class
// relabel[c] (a permutation); label columns and names move with it.
LabeledDataset shifted_copy(const LabeledDataset& ds, const Eigen::VectorXd& offset,
                            const std::optional<std::vector<Eigen::Index>>& relabel =
                                std::nullopt,
                            std::string id = {});

}  // namespace otgeo
