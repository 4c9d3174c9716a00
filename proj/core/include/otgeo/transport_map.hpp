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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/label_geometry.hpp"
#include "otgeo/otdd.hpp"

namespace otgeo {

enum class MapKind { kBarycentric, kBatchedBarycentric, kIdentity };

// Image of every source sample under a dataset map: a feature vector and a
// distribution over the target's classes.
struct DatasetMap {
  std::string source_id;
  std::string target_id;
  Eigen::MatrixXd mapped_features;  // N_Q x d
  Eigen::MatrixXd mapped_labels;    // N_Q x C_P, row-stochastic
  std::vector<std::string> target_class_names;
  MapKind kind = MapKind::kBarycentric;

  Eigen::Index size() const { return mapped_features.rows(); }
  Eigen::Index num_classes() const { return mapped_labels.cols(); }
};

// The pushed-forward dataset (soft labels over the target's classes).
LabeledDataset pushforward(const DatasetMap& map);

// Row-normalizes the OTDD coupling between q and p and averages p's samples
// with those weights. Throws kDegenerateRow when a coupling row sums below
// 1e-12.
DatasetMap barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                           const OtddConfig& cfg);
DatasetMap barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                           const LabelDistanceMatrix& m, const OtddConfig& cfg);

// Splits q into consecutive batches of batch_size rows and maps each against
// a size-matched batch of p drawn without replacement (reshuffled when p runs
// out). A batch that is at least as large as p uses all of p in order.
DatasetMap batched_barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                                   Eigen::Index batch_size, std::uint64_t seed,
                                   const OtddConfig& cfg);
DatasetMap batched_barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                                   const LabelDistanceMatrix& m,
                                   Eigen::Index batch_size, std::uint64_t seed,
                                   const OtddConfig& cfg);

DatasetMap identity_map(const LabeledDataset& q);

// One-hot majority vote over the k nearest few-shot samples; ties in
// distance go to the lower sample index, ties in votes to the lower class.
LabeledDataset knn_pseudolabel(const Eigen::MatrixXd& unlabeled,
                               const LabeledDataset& few_shot, Eigen::Index k,
                               std::string id = "pseudolabeled");

}  // namespace otgeo
