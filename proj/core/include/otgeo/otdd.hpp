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

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/label_geometry.hpp"
#include "otgeo/ot.hpp"

namespace otgeo {

struct OtddConfig {
  OtConfig ot;
  LabelConfig label;
};

struct OtddResult {
  Coupling coupling;  // N_Q x N_P
  double distance_squared = 0.0;
  LabelDistanceMatrix label_matrix;
  OtddConfig config;
  double epsilon = 0.0;  // zero for the exact solver
};

// Ground cost ||x_q - x_p||^2 + y_q^T M y_p for every pair of samples.
// M must be C_Q x C_P.
CostMatrix otdd_cost_matrix(const LabeledDataset& q, const LabeledDataset& p,
                            const LabelDistanceMatrix& m);

// Labeled-dataset OT distance under uniform sample weights. Computes the
// class-conditional label matrix first; both datasets must be hard-labeled.
OtddResult otdd(const LabeledDataset& q, const LabeledDataset& p,
                const OtddConfig& cfg);

// Same with a precomputed label matrix, which also admits soft labels.
OtddResult otdd(const LabeledDataset& q, const LabeledDataset& p,
                const LabelDistanceMatrix& m, const OtddConfig& cfg);

}  // namespace otgeo
