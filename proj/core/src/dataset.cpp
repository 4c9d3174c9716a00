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
#include "otgeo/dataset.hpp"

#include <cmath>
#include <numeric>

#include "otgeo/error.hpp"

namespace otgeo {

void validate(const LabeledDataset& ds) {
  const auto n = ds.features.rows();
  if (n < 1 || ds.features.cols() < 1 || ds.labels.cols() < 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "dataset '" + ds.id + "' needs n >= 1, d >= 1, C >= 1");
  }
  if (ds.labels.rows() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "dataset '" + ds.id + "' has " + std::to_string(n) +
                    " feature rows but " + std::to_string(ds.labels.rows()) +
                    " label rows");
  }
  if (static_cast<Eigen::Index>(ds.class_names.size()) != ds.labels.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "dataset '" + ds.id + "' has " +
                    std::to_string(ds.class_names.size()) +
                    " class names for " + std::to_string(ds.labels.cols()) +
                    " label columns");
  }
  if (!ds.features.allFinite() || !ds.labels.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue,
                "dataset '" + ds.id + "' contains non-finite values");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = ds.labels.row(i);
    if (row.minCoeff() < 0.0 ||
        std::abs(row.sum() - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::kNonStochasticLabel,
                  "dataset '" + ds.id + "' label row " + std::to_string(i) +
                      " is not a distribution (sum " +
                      std::to_string(row.sum()) + ")");
    }
  }
}

std::vector<std::string> default_class_names(Eigen::Index num_classes) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(num_classes));
  for (Eigen::Index c = 0; c < num_classes; ++c) names.push_back(std::to_string(c));
  return names;
}

LabeledDataset make_dataset(Eigen::MatrixXd features, Eigen::MatrixXd labels,
                            std::vector<std::string> class_names,
                            std::string id) {
  if (class_names.empty()) class_names = default_class_names(labels.cols());
  LabeledDataset ds{std::move(features), std::move(labels),
                    std::move(class_names), std::move(id)};
  validate(ds);
  return ds;
}

LabeledDataset make_hard_dataset(Eigen::MatrixXd features,
                                 std::span<const Eigen::Index> class_ids,
                                 Eigen::Index num_classes,
                                 std::vector<std::string> class_names,
                                 std::string id) {
  if (static_cast<Eigen::Index>(class_ids.size()) != features.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "class id count differs from feature rows");
  }
  Eigen::MatrixXd labels = Eigen::MatrixXd::Zero(features.rows(), num_classes);
  for (std::size_t i = 0; i < class_ids.size(); ++i) {
    const auto c = class_ids[i];
    if (c < 0 || c >= num_classes) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "class id " + std::to_string(c) + " outside [0, " +
                      std::to_string(num_classes) + ")");
    }
    labels(static_cast<Eigen::Index>(i), c) = 1.0;
  }
  return make_dataset(std::move(features), std::move(labels),
                      std::move(class_names), std::move(id));
}

bool is_hard_labeled(const LabeledDataset& ds) {
  for (Eigen::Index i = 0; i < ds.labels.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index c = 0; c < ds.labels.cols(); ++c) {
      const double v = ds.labels(i, c);
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

std::vector<Eigen::Index> hard_label_ids(const LabeledDataset& ds) {
  if (!is_hard_labeled(ds)) {
    throw Error(ErrorCode::kSoftLabels,
                "dataset '" + ds.id + "' is not hard-labeled");
  }
  std::vector<Eigen::Index> ids(static_cast<std::size_t>(ds.size()));
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    ds.labels.row(i).maxCoeff(&ids[static_cast<std::size_t>(i)]);
  }
  return ids;
}

bool same_samples(const LabeledDataset& a, const LabeledDataset& b) {
  return a.features.rows() == b.features.rows() &&
         a.features.cols() == b.features.cols() &&
         a.labels.cols() == b.labels.cols() && a.features == b.features &&
         a.labels == b.labels;
}

ClassConditional make_class_conditional(Eigen::Index class_index,
                                        Eigen::MatrixXd samples) {
  if (samples.rows() == 0) {
    throw Error(ErrorCode::kEmptyClass,
                "class " + std::to_string(class_index) + " has no samples");
  }
  ClassConditional cc;
  cc.class_index = class_index;
  cc.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - cc.mean.transpose();
  cc.covariance = (centered.transpose() * centered) /
                  static_cast<double>(samples.rows());
  cc.covariance = 0.5 * (cc.covariance + cc.covariance.transpose());
  cc.samples = std::move(samples);
  return cc;
}

std::vector<ClassConditional> split_by_class(const LabeledDataset& ds) {
  const auto ids = hard_label_ids(ds);
  const auto num_classes = ds.num_classes();
  std::vector<std::vector<Eigen::Index>> rows(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    rows[static_cast<std::size_t>(ids[i])].push_back(static_cast<Eigen::Index>(i));
  }
  std::vector<ClassConditional> out;
  out.reserve(rows.size());
  for (Eigen::Index c = 0; c < num_classes; ++c) {
    const auto& idx = rows[static_cast<std::size_t>(c)];
    if (idx.empty()) {
      throw Error(ErrorCode::kEmptyClass,
                  "dataset '" + ds.id + "' class " + std::to_string(c) + " (" +
                      ds.class_names[static_cast<std::size_t>(c)] +
                      ") has no samples");
    }
    out.push_back(make_class_conditional(c, ds.features(idx, Eigen::all)));
  }
  return out;
}

SimplexWeights SimplexWeights::from(Eigen::VectorXd values) {
  if (values.size() == 0) {
    throw Error(ErrorCode::kBadWeights, "empty weight vector");
  }
  if (!values.allFinite() || values.minCoeff() < 0.0 ||
      std::abs(values.sum() - 1.0) > kStochasticTolerance) {
    throw Error(ErrorCode::kBadWeights,
                "weights must be nonnegative and sum to 1 (sum " +
                    std::to_string(values.sum()) + ")");
  }
  return SimplexWeights(std::move(values));
}

SimplexWeights SimplexWeights::from(std::span<const double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return from(std::move(v));
}

SimplexWeights SimplexWeights::vertex(Eigen::Index m, Eigen::Index i) {
  if (i < 0 || i >= m) {
    throw Error(ErrorCode::kIndexOutOfRange, "vertex index outside simplex");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  v[i] = 1.0;
  return SimplexWeights(std::move(v));
}

SimplexWeights SimplexWeights::uniform(Eigen::Index m) {
  if (m < 1) throw Error(ErrorCode::kBadWeights, "empty weight vector");
  return SimplexWeights(Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
}

Eigen::Index SimplexWeights::vertex_index() const {
  Eigen::Index found = -1;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (values_[i] == 1.0) {
      if (found >= 0) return -1;
      found = i;
    } else if (values_[i] != 0.0) {
      return -1;
    }
  }
  return found;
}

PaddedLabelSpace PaddedLabelSpace::from_counts(std::vector<Eigen::Index> class_counts) {
  PaddedLabelSpace space;
  space.offsets_.reserve(class_counts.size());
  Eigen::Index offset = 0;
  for (const auto c : class_counts) {
    if (c < 1) {
      throw Error(ErrorCode::kShapeMismatch, "class counts must be positive");
    }
    space.offsets_.push_back(offset);
    offset += c;
  }
  space.counts_ = std::move(class_counts);
  space.total_dim_ = offset;
  return space;
}

Eigen::VectorXd pad_label(const Eigen::Ref<const Eigen::VectorXd>& y,
                          std::size_t dataset_index,
                          const PaddedLabelSpace& space) {
  if (dataset_index >= space.num_datasets()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "dataset index " + std::to_string(dataset_index) +
                    " with only " + std::to_string(space.num_datasets()) +
                    " datasets");
  }
  const auto count = space.class_counts()[dataset_index];
  if (y.size() != count) {
    throw Error(ErrorCode::kShapeMismatch,
                "label has " + std::to_string(y.size()) + " entries, expected " +
                    std::to_string(count));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.total_dim());
  out.segment(space.offsets()[dataset_index], count) = y;
  return out;
}

}  // namespace otgeo
