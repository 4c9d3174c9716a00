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
#include "otgeo/datagen.hpp"

#include <string>

#include "otgeo/error.hpp"
#include "otgeo/linalg.hpp"
#include "otgeo/random.hpp"

namespace otgeo {

LabeledDataset gaussian_mixture(Eigen::Index n_per_class,
                                const std::vector<Eigen::VectorXd>& means,
                                const std::vector<Eigen::MatrixXd>& covs,
                                std::uint64_t seed, std::string id) {
  if (means.empty() || means.size() != covs.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(means.size()) + " means and " +
                    std::to_string(covs.size()) + " covariances");
  }
  if (n_per_class < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_per_class must be positive");
  }
  const auto d = means.front().size();
  const auto c = static_cast<Eigen::Index>(means.size());
  std::vector<Eigen::MatrixXd> roots;
  roots.reserve(covs.size());
  for (std::size_t k = 0; k < covs.size(); ++k) {
    if (means[k].size() != d || covs[k].rows() != d || covs[k].cols() != d) {
      throw Error(ErrorCode::kShapeMismatch,
                  "component " + std::to_string(k) + " has inconsistent dimensions");
    }
    roots.push_back(linalg::psd_sqrt(covs[k]));
  }

  Rng rng(seed);
  Eigen::MatrixXd features(n_per_class * c, d);
  std::vector<Eigen::Index> ids(static_cast<std::size_t>(n_per_class * c));
  Eigen::VectorXd z(d);
  for (Eigen::Index k = 0; k < c; ++k) {
    for (Eigen::Index s = 0; s < n_per_class; ++s) {
      for (Eigen::Index t = 0; t < d; ++t) z[t] = rng.normal();
      const Eigen::Index row = k * n_per_class + s;
      features.row(row) =
          (means[static_cast<std::size_t>(k)] + roots[static_cast<std::size_t>(k)] * z)
              .transpose();
      ids[static_cast<std::size_t>(row)] = k;
    }
  }
  return make_hard_dataset(std::move(features), ids, c, {}, std::move(id));
}

std::vector<Eigen::VectorXd> grid_means(int rows, int cols, double spacing) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least one cell");
  }
  std::vector<Eigen::VectorXd> means;
  means.reserve(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Eigen::VectorXd m(2);
      m << spacing * c, spacing * r;
      means.push_back(std::move(m));
    }
  }
  return means;
}

LabeledDataset checkerboard(int rows, int cols, double spacing, double variance,
                            Eigen::Index n_per_class, std::uint64_t seed,
                            std::string id) {
  const auto means = grid_means(rows, cols, spacing);
  const std::vector<Eigen::MatrixXd> covs(means.size(),
                                          variance * Eigen::MatrixXd::Identity(2, 2));
  return gaussian_mixture(n_per_class, means, covs, seed, std::move(id));
}

LabeledDataset shifted_copy(const LabeledDataset& ds, const Eigen::VectorXd& offset,
                            const std::optional<std::vector<Eigen::Index>>& relabel,
                            std::string id) {
  if (offset.size() != ds.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "offset has " + std::to_string(offset.size()) + " entries for d = " +
                    std::to_string(ds.dim()));
  }
  LabeledDataset out;
  out.features = ds.features.rowwise() + offset.transpose();
  out.id = id.empty() ? ds.id + "+shift" : std::move(id);
  if (!relabel) {
    out.labels = ds.labels;
    out.class_names = ds.class_names;
  } else {
    const auto& perm = *relabel;
    const auto c = ds.num_classes();
    std::vector<char> used(static_cast<std::size_t>(c), 0);
    if (static_cast<Eigen::Index>(perm.size()) != c) {
      throw Error(ErrorCode::kShapeMismatch, "relabeling must cover every class");
    }
    out.labels.resize(ds.size(), c);
    out.class_names.resize(static_cast<std::size_t>(c));
    for (Eigen::Index k = 0; k < c; ++k) {
      const auto to = perm[static_cast<std::size_t>(k)];
      if (to < 0 || to >= c || used[static_cast<std::size_t>(to)]) {
        throw Error(ErrorCode::kInvalidArgument, "relabeling is not a permutation");
      }
      used[static_cast<std::size_t>(to)] = 1;
      out.labels.col(to) = ds.labels.col(k);
      out.class_names[static_cast<std::size_t>(to)] = ds.class_names[static_cast<std::size_t>(k)];
    }
  }
  validate(out);
  return out;
}

}  // namespace otgeo
