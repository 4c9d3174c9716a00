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
#include <span>
#include <string>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/ot.hpp"
#include "otgeo/transport_map.hpp"

namespace otgeo {

// Label space spanned by the maps' target classes, in map order.
PaddedLabelSpace padded_space_for(std::span<const DatasetMap> maps);

// Point on the generalized geodesic with base Q: features are the a-weighted
// sum of the mapped features, labels the a-weighted sum of the zero-padded
// mapped labels. All maps must share a source and row count. A vertex of the
// simplex copies that map's rows without arithmetic.
LabeledDataset combine(std::span<const DatasetMap> maps, const SimplexWeights& a,
                       const PaddedLabelSpace& space, std::string id = {});

// ((1 - t) Id + t T) pushed through q, labels in the (C_Q + C_P) block space.
// Throws kOutOfRange when t is outside [0, 1].
LabeledDataset mccann_dataset(const LabeledDataset& q, const DatasetMap& map, double t);

// Draws index pairs (i, j) with probability plan(i, j) and emits
// (1 - t) x_i + t y_j.
Eigen::MatrixXd displacement_interpolate(const Coupling& coupling,
                                         const Eigen::MatrixXd& source,
                                         const Eigen::MatrixXd& target, double t,
                                         Eigen::Index n_samples, std::uint64_t seed);

}  // namespace otgeo
