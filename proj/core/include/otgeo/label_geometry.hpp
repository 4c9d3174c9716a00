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

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/ot.hpp"

namespace otgeo {

enum class LabelMethod { kExact, kGaussian };

struct LabelConfig {
  LabelMethod method = LabelMethod::kExact;
  // Classes larger than this are subsampled before the inner exact OT.
  std::size_t class_cap = 500;
  std::uint64_t seed = 0;
};

// W2^2 between class-conditional measures of two datasets; rows index the
// first dataset's classes, columns the second's.
struct LabelDistanceMatrix {
  Eigen::MatrixXd values;
  LabelMethod method = LabelMethod::kExact;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  LabelDistanceMatrix transposed() const { return {values.transpose(), method}; }
};

// Bures-Wasserstein W2^2 between N(mean1, cov1) and N(mean2, cov2).
// Throws kNotPSD.
double bures_w2_squared(const Eigen::VectorXd& mean1, const Eigen::MatrixXd& cov1,
                        const Eigen::VectorXd& mean2, const Eigen::MatrixXd& cov2);

// W2^2 between two class conditionals by the configured method. Exactly
// symmetric in its arguments.
double class_w2_squared(const ClassConditional& a, const ClassConditional& b,
                        const LabelConfig& cfg);

// Both datasets must be hard-labeled with nonempty classes. When the two
// datasets hold the same samples the result is symmetric with zero diagonal.
LabelDistanceMatrix label_distance_matrix(const LabeledDataset& a,
                                          const LabeledDataset& b,
                                          const LabelConfig& cfg);

// Self-distance matrix: symmetric, zero diagonal.
LabelDistanceMatrix label_distance_matrix(const LabeledDataset& ds,
                                          const LabelConfig& cfg);

// Bilinear relaxation y_a^T M y_b. One-hot inputs return the entry exactly.
double soft_label_cost(const Eigen::Ref<const Eigen::VectorXd>& ya,
                       const Eigen::Ref<const Eigen::VectorXd>& yb,
                       const LabelDistanceMatrix& m);

}  // namespace otgeo
