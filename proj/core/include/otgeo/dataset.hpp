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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace otgeo {

// Tolerance on label row sums and simplex weights.
inline constexpr double kStochasticTolerance = 1e-9;

// A feature matrix paired with one label distribution per sample. Hard
// labels are stored as one-hot rows. Class ids are the dense column indices
// of `labels`; `class_names` is metadata only.
struct LabeledDataset {
  Eigen::MatrixXd features;  // n x d
  Eigen::MatrixXd labels;    // n x C, row-stochastic
  std::vector<std::string> class_names;
  std::string id;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }
  Eigen::Index num_classes() const { return labels.cols(); }
};

// Throws Error{kShapeMismatch | kNonStochasticLabel | kNonFiniteValue}.
void validate(const LabeledDataset& ds);

std::vector<std::string> default_class_names(Eigen::Index num_classes);

// Builds and validates a dataset. Empty `class_names` become "0".."C-1".
LabeledDataset make_dataset(Eigen::MatrixXd features, Eigen::MatrixXd labels,
                            std::vector<std::string> class_names = {},
                            std::string id = {});

// One-hot convenience constructor from integer class ids in [0, num_classes).
LabeledDataset make_hard_dataset(Eigen::MatrixXd features,
                                 std::span<const Eigen::Index> class_ids,
                                 Eigen::Index num_classes,
                                 std::vector<std::string> class_names = {},
                                 std::string id = {});

bool is_hard_labeled(const LabeledDataset& ds);

// Per-row class id of a hard-labeled dataset; throws kSoftLabels otherwise.
std::vector<Eigen::Index> hard_label_ids(const LabeledDataset& ds);

// Features and labels compare equal; names and id are ignored.
bool same_samples(const LabeledDataset& a, const LabeledDataset& b);

struct ClassConditional {
  Eigen::Index class_index = 0;
  Eigen::MatrixXd samples;     // n_y x d
  Eigen::VectorXd mean;        // d
  Eigen::MatrixXd covariance;  // d x d, 1/n_y normalization
};

// Empirical moments of a sample block. Throws kEmptyClass on zero rows.
ClassConditional make_class_conditional(Eigen::Index class_index,
                                        Eigen::MatrixXd samples);

// Requires hard labels and a nonempty class for every column.
std::vector<ClassConditional> split_by_class(const LabeledDataset& ds);

// A point on the probability simplex.
class SimplexWeights {
 public:
  // Throws kBadWeights when an entry is negative or the sum is off by more
  // than kStochasticTolerance.
  static SimplexWeights from(Eigen::VectorXd values);
  static SimplexWeights from(std::span<const double> values);
  static SimplexWeights vertex(Eigen::Index m, Eigen::Index i);
  static SimplexWeights uniform(Eigen::Index m);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  // Index of the single unit entry, or -1 when the point is not a vertex.
  Eigen::Index vertex_index() const;

 private:
  explicit SimplexWeights(Eigen::VectorXd values) : values_(std::move(values)) {}
  Eigen::VectorXd values_;
};

// Concatenated label space for m datasets with C_1..C_m classes.
class PaddedLabelSpace {
 public:
  static PaddedLabelSpace from_counts(std::vector<Eigen::Index> class_counts);

  std::size_t num_datasets() const { return counts_.size(); }
  const std::vector<Eigen::Index>& class_counts() const { return counts_; }
  const std::vector<Eigen::Index>& offsets() const { return offsets_; }
  Eigen::Index total_dim() const { return total_dim_; }

 private:
  std::vector<Eigen::Index> counts_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index total_dim_ = 0;
};

// Embeds the label vector of dataset `dataset_index` into the padded space,
// zeros elsewhere.
Eigen::VectorXd pad_label(const Eigen::Ref<const Eigen::VectorXd>& y,
                          std::size_t dataset_index,
                          const PaddedLabelSpace& space);

}  // namespace otgeo
