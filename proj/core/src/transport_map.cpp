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
#include "otgeo/transport_map.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "otgeo/error.hpp"
#include "otgeo/linalg.hpp"
#include "otgeo/random.hpp"

namespace otgeo {

namespace {

constexpr double kDegenerateRowMass = 1e-12;

// Row-normalized barycentric images of the coupling rows.
void project_rows(const Eigen::MatrixXd& plan, const LabeledDataset& p,
                  Eigen::Ref<Eigen::MatrixXd> features,
                  Eigen::Ref<Eigen::MatrixXd> labels, Eigen::Index row_offset) {
  for (Eigen::Index i = 0; i < plan.rows(); ++i) {
    const double mass = plan.row(i).sum();
    if (!(mass >= kDegenerateRowMass)) {
      throw Error(ErrorCode::kDegenerateRow,
                  "coupling row " + std::to_string(row_offset + i) +
                      " has mass " + std::to_string(mass));
    }
    const Eigen::RowVectorXd w = plan.row(i) / mass;
    features.row(i) = w * p.features;
    Eigen::RowVectorXd y = w * p.labels;
    y /= y.sum();
    labels.row(i) = y;
  }
}

DatasetMap empty_map(const LabeledDataset& q, const LabeledDataset& p, MapKind kind) {
  DatasetMap map;
  map.source_id = q.id;
  map.target_id = p.id;
  map.mapped_features.resize(q.size(), p.dim());
  map.mapped_labels.resize(q.size(), p.num_classes());
  map.target_class_names = p.class_names;
  map.kind = kind;
  return map;
}

LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<Eigen::Index>& rows) {
  return LabeledDataset{ds.features(rows, Eigen::all), ds.labels(rows, Eigen::all),
                        ds.class_names, ds.id};
}

}  // namespace

LabeledDataset pushforward(const DatasetMap& map) {
  return make_dataset(map.mapped_features, map.mapped_labels,
                      map.target_class_names, map.source_id + "->" + map.target_id);
}

DatasetMap barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                           const OtddConfig& cfg) {
  if (q.dim() != p.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "datasets '" + q.id + "' and '" + p.id +
                    "' differ in feature dimension");
  }
  return barycentric_map(q, p, label_distance_matrix(q, p, cfg.label), cfg);
}

DatasetMap barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                           const LabelDistanceMatrix& m, const OtddConfig& cfg) {
  const auto result = otdd(q, p, m, cfg);
  auto map = empty_map(q, p, MapKind::kBarycentric);
  project_rows(result.coupling.plan, p, map.mapped_features, map.mapped_labels, 0);
  return map;
}

DatasetMap batched_barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                                   Eigen::Index batch_size, std::uint64_t seed,
                                   const OtddConfig& cfg) {
  if (q.dim() != p.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "datasets '" + q.id + "' and '" + p.id +
                    "' differ in feature dimension");
  }
  return batched_barycentric_map(q, p, label_distance_matrix(q, p, cfg.label),
                                 batch_size, seed, cfg);
}

DatasetMap batched_barycentric_map(const LabeledDataset& q, const LabeledDataset& p,
                                   const LabelDistanceMatrix& m,
                                   Eigen::Index batch_size, std::uint64_t seed,
                                   const OtddConfig& cfg) {
  if (batch_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be at least 2");
  }
  auto map = empty_map(q, p, MapKind::kBatchedBarycentric);
  const auto np = static_cast<std::size_t>(p.size());
  Rng rng(seed);
  std::vector<std::size_t> order;
  std::size_t cursor = np;  // forces a shuffle on first use

  for (Eigen::Index start = 0; start < q.size(); start += batch_size) {
    const Eigen::Index rows = std::min(batch_size, q.size() - start);
    std::vector<Eigen::Index> q_rows(static_cast<std::size_t>(rows));
    std::iota(q_rows.begin(), q_rows.end(), start);

    std::vector<Eigen::Index> p_rows;
    if (static_cast<std::size_t>(rows) >= np) {
      p_rows.resize(np);
      std::iota(p_rows.begin(), p_rows.end(), Eigen::Index{0});
    } else {
      if (cursor + static_cast<std::size_t>(rows) > np) {
        order = rng.permutation(np);
        cursor = 0;
      }
      p_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                    order.begin() + static_cast<std::ptrdiff_t>(cursor) + rows);
      cursor += static_cast<std::size_t>(rows);
    }

    const auto q_batch = take_rows(q, q_rows);
    const auto p_batch = take_rows(p, p_rows);
    const auto result = otdd(q_batch, p_batch, m, cfg);
    project_rows(result.coupling.plan, p_batch,
                 map.mapped_features.middleRows(start, rows),
                 map.mapped_labels.middleRows(start, rows), start);
  }
  return map;
}

DatasetMap identity_map(const LabeledDataset& q) {
  DatasetMap map;
  map.source_id = q.id;
  map.target_id = q.id;
  map.mapped_features = q.features;
  map.mapped_labels = q.labels;
  map.target_class_names = q.class_names;
  map.kind = MapKind::kIdentity;
  return map;
}

LabeledDataset knn_pseudolabel(const Eigen::MatrixXd& unlabeled,
                               const LabeledDataset& few_shot, Eigen::Index k,
                               std::string id) {
  if (k < 1 || k > few_shot.size()) {
    throw Error(ErrorCode::kKTooLarge,
                "k = " + std::to_string(k) + " with " +
                    std::to_string(few_shot.size()) + " labeled samples");
  }
  const auto few_ids = hard_label_ids(few_shot);
  const Eigen::MatrixXd dist = linalg::squared_distances(unlabeled, few_shot.features);
  std::vector<Eigen::Index> out_ids(static_cast<std::size_t>(unlabeled.rows()));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(few_shot.size()));
  std::vector<Eigen::Index> votes(static_cast<std::size_t>(few_shot.num_classes()));
  for (Eigen::Index i = 0; i < unlabeled.rows(); ++i) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                        const double da = dist(i, a);
                        const double db = dist(i, b);
                        return da < db || (da == db && a < b);
                      });
    std::fill(votes.begin(), votes.end(), 0);
    for (Eigen::Index t = 0; t < k; ++t) {
      ++votes[static_cast<std::size_t>(few_ids[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])])];
    }
    // max_element returns the first maximum, i.e. the lowest class index.
    out_ids[static_cast<std::size_t>(i)] =
        std::max_element(votes.begin(), votes.end()) - votes.begin();
  }
  return make_hard_dataset(unlabeled, out_ids, few_shot.num_classes(),
                           few_shot.class_names, std::move(id));
}

}  // namespace otgeo
