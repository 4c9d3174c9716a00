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
#include "otgeo/otdd.hpp"

#include <string>

#include "otgeo/error.hpp"
#include "otgeo/linalg.hpp"

namespace otgeo {

CostMatrix otdd_cost_matrix(const LabeledDataset& q, const LabeledDataset& p,
                            const LabelDistanceMatrix& m) {
  if (q.dim() != p.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "datasets '" + q.id + "' (d=" + std::to_string(q.dim()) +
                    ") and '" + p.id + "' (d=" + std::to_string(p.dim()) +
                    ") differ in feature dimension");
  }
  if (m.rows() != q.num_classes() || m.cols() != p.num_classes()) {
    throw Error(ErrorCode::kShapeMismatch,
                "label matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", datasets have " +
                    std::to_string(q.num_classes()) + " and " +
                    std::to_string(p.num_classes()) + " classes");
  }
  Eigen::MatrixXd cost = linalg::squared_distances(q.features, p.features);
  if (is_hard_labeled(q) && is_hard_labeled(p)) {
    const auto yq = hard_label_ids(q);
    const auto yp = hard_label_ids(p);
    for (Eigen::Index j = 0; j < cost.cols(); ++j) {
      for (Eigen::Index i = 0; i < cost.rows(); ++i) {
        cost(i, j) += m.values(yq[static_cast<std::size_t>(i)],
                               yp[static_cast<std::size_t>(j)]);
      }
    }
  } else {
    for (Eigen::Index j = 0; j < cost.cols(); ++j) {
      const Eigen::VectorXd ypj = p.labels.row(j).transpose();
      for (Eigen::Index i = 0; i < cost.rows(); ++i) {
        cost(i, j) += soft_label_cost(q.labels.row(i).transpose(), ypj, m);
      }
    }
  }
  return CostMatrix(std::move(cost));
}

OtddResult otdd(const LabeledDataset& q, const LabeledDataset& p,
                const OtddConfig& cfg) {
  if (q.dim() != p.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "datasets '" + q.id + "' and '" + p.id +
                    "' differ in feature dimension");
  }
  return otdd(q, p, label_distance_matrix(q, p, cfg.label), cfg);
}

OtddResult otdd(const LabeledDataset& q, const LabeledDataset& p,
                const LabelDistanceMatrix& m, const OtddConfig& cfg) {
  const CostMatrix cost = otdd_cost_matrix(q, p, m);
  auto solved = solve_ot(cost, uniform_marginal(q.size()), uniform_marginal(p.size()),
                         cfg.ot);
  OtddResult result;
  result.coupling = std::move(solved.coupling);
  result.distance_squared = solved.cost;
  result.label_matrix = m;
  result.config = cfg;
  result.epsilon = cfg.ot.solver == OtSolver::kSinkhorn ? solved.epsilon : 0.0;
  return result;
}

}  // namespace otgeo
