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
#include "otgeo/geodesic.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "otgeo/error.hpp"
#include "otgeo/random.hpp"

namespace otgeo {

namespace {

void check_unit_interval(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "interpolation parameter " + std::to_string(t) + " outside [0, 1]");
  }
}

}  // namespace

PaddedLabelSpace padded_space_for(std::span<const DatasetMap> maps) {
  std::vector<Eigen::Index> counts;
  counts.reserve(maps.size());
  for (const auto& m : maps) counts.push_back(m.num_classes());
  return PaddedLabelSpace::from_counts(std::move(counts));
}

LabeledDataset combine(std::span<const DatasetMap> maps, const SimplexWeights& a,
                       const PaddedLabelSpace& space, std::string id) {
  if (maps.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "no maps to combine");
  }
  if (static_cast<std::size_t>(a.size()) != maps.size() ||
      space.num_datasets() != maps.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(maps.size()) + " maps, " + std::to_string(a.size()) +
                    " weights, " + std::to_string(space.num_datasets()) +
                    " label blocks");
  }
  const auto& first = maps.front();
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const auto& m = maps[j];
    if (m.source_id != first.source_id || m.size() != first.size()) {
      throw Error(ErrorCode::kSourceMismatch,
                  "map " + std::to_string(j) + " starts from '" + m.source_id +
                      "' with " + std::to_string(m.size()) + " rows, map 0 from '" +
                      first.source_id + "' with " + std::to_string(first.size()));
    }
    if (m.mapped_features.cols() != first.mapped_features.cols() ||
        m.num_classes() != space.class_counts()[j]) {
      throw Error(ErrorCode::kShapeMismatch,
                  "map " + std::to_string(j) + " does not match the label space");
    }
  }

  const Eigen::Index n = first.size();
  Eigen::MatrixXd features = Eigen::MatrixXd::Zero(n, first.mapped_features.cols());
  Eigen::MatrixXd labels = Eigen::MatrixXd::Zero(n, space.total_dim());
  const Eigen::Index vertex = a.vertex_index();
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const double w = a[static_cast<Eigen::Index>(j)];
    const auto offset = space.offsets()[j];
    const auto count = space.class_counts()[j];
    if (vertex >= 0) {
      if (static_cast<Eigen::Index>(j) != vertex) continue;
      features = maps[j].mapped_features;
      labels.middleCols(offset, count) = maps[j].mapped_labels;
    } else {
      features += w * maps[j].mapped_features;
      labels.middleCols(offset, count) = w * maps[j].mapped_labels;
    }
  }

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(space.total_dim()));
  for (const auto& m : maps) {
    for (const auto& c : m.target_class_names) names.push_back(m.target_id + ":" + c);
  }
  if (id.empty()) id = first.source_id + "@geodesic";
  return make_dataset(std::move(features), std::move(labels), std::move(names),
                      std::move(id));
}

LabeledDataset mccann_dataset(const LabeledDataset& q, const DatasetMap& map, double t) {
  check_unit_interval(t);
  if (map.source_id != q.id || map.size() != q.size()) {
    throw Error(ErrorCode::kSourceMismatch,
                "map starts from '" + map.source_id + "', not '" + q.id + "'");
  }
  const std::array<DatasetMap, 2> maps{identity_map(q), map};
  const std::array<double, 2> weights{1.0 - t, t};
  return combine(maps, SimplexWeights::from(std::span<const double>(weights)),
                 padded_space_for(maps), q.id + "@mccann");
}

Eigen::MatrixXd displacement_interpolate(const Coupling& coupling,
                                         const Eigen::MatrixXd& source,
                                         const Eigen::MatrixXd& target, double t,
                                         Eigen::Index n_samples, std::uint64_t seed) {
  check_unit_interval(t);
  const auto& plan = coupling.plan;
  if (plan.rows() != source.rows() || plan.cols() != target.rows() ||
      source.cols() != target.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "coupling does not match the point sets");
  }
  if (n_samples < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative sample count");
  }
  // Cumulative mass over cells in column-major order.
  std::vector<double> cumulative(static_cast<std::size_t>(plan.size()));
  double acc = 0.0;
  for (Eigen::Index c = 0; c < plan.size(); ++c) {
    acc += std::max(0.0, plan.data()[c]);
    cumulative[static_cast<std::size_t>(c)] = acc;
  }
  if (!(acc > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "coupling has no mass");
  }
  Rng rng(seed);
  Eigen::MatrixXd out(n_samples, source.cols());
  for (Eigen::Index s = 0; s < n_samples; ++s) {
    const double u = rng.uniform() * acc;
    // upper_bound lands on the first cell whose running mass exceeds u, so
    // zero-mass cells are never drawn.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), acc);
    const auto cell = static_cast<Eigen::Index>(it - cumulative.begin());
    const Eigen::Index i = cell % plan.rows();
    const Eigen::Index j = cell / plan.rows();
    if (t == 0.0) {
      out.row(s) = source.row(i);
    } else if (t == 1.0) {
      out.row(s) = target.row(j);
    } else {
      out.row(s) = (1.0 - t) * source.row(i) + t * target.row(j);
    }
  }
  return out;
}

}  // namespace otgeo
