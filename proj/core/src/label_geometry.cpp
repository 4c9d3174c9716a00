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
#include "otgeo/label_geometry.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "otgeo/error.hpp"
#include "otgeo/linalg.hpp"
#include "otgeo/random.hpp"

namespace otgeo {

double bures_w2_squared(const Eigen::VectorXd& mean1, const Eigen::MatrixXd& cov1,
                        const Eigen::VectorXd& mean2, const Eigen::MatrixXd& cov2) {
  const auto d = mean1.size();
  if (mean2.size() != d || cov1.rows() != d || cov2.rows() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "Gaussian moments have mismatched sizes");
  }
  const Eigen::MatrixXd root1 = linalg::psd_sqrt(cov1);
  linalg::check_psd(cov2);
  const Eigen::MatrixXd sym2 = 0.5 * (cov2 + cov2.transpose());
  Eigen::MatrixXd cross = root1 * sym2 * root1;
  cross = 0.5 * (cross + cross.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cross, Eigen::EigenvaluesOnly);
  const double cross_trace = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  const double value = (mean1 - mean2).squaredNorm() + cov1.trace() +
                       cov2.trace() - 2.0 * cross_trace;
  return std::max(0.0, value);
}

namespace {

// Deterministic subsample that depends only on the samples and the seed, so
// relabeling classes leaves every matrix entry unchanged.
Eigen::MatrixXd capped(const Eigen::MatrixXd& samples, const LabelConfig& cfg) {
  const auto n = static_cast<std::size_t>(samples.rows());
  if (n <= cfg.class_cap) return samples;
  Rng rng(cfg.seed);
  auto order = rng.permutation(n);
  order.resize(cfg.class_cap);
  std::sort(order.begin(), order.end());
  return samples(order, Eigen::all);
}

}  // namespace

double class_w2_squared(const ClassConditional& a, const ClassConditional& b,
                        const LabelConfig& cfg) {
  if (a.samples.cols() != b.samples.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "class feature dimensions differ");
  }
  if (a.samples.rows() == b.samples.rows() && a.samples == b.samples) return 0.0;
  const bool swap = canonically_before(b.samples, a.samples);
  const ClassConditional& first = swap ? b : a;
  const ClassConditional& second = swap ? a : b;
  if (cfg.method == LabelMethod::kGaussian) {
    return bures_w2_squared(first.mean, first.covariance, second.mean,
                            second.covariance);
  }
  if (cfg.class_cap == 0) {
    throw Error(ErrorCode::kInvalidArgument, "class_cap must be positive");
  }
  OtConfig inner;
  inner.solver = OtSolver::kExact;
  inner.exact.max_cells = cfg.class_cap * cfg.class_cap;
  return w2_squared_empirical(capped(first.samples, cfg),
                              capped(second.samples, cfg), inner);
}

LabelDistanceMatrix label_distance_matrix(const LabeledDataset& ds,
                                          const LabelConfig& cfg) {
  const auto classes = split_by_class(ds);
  const auto c = static_cast<Eigen::Index>(classes.size());
  LabelDistanceMatrix out{Eigen::MatrixXd::Zero(c, c), cfg.method};
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = i + 1; j < c; ++j) {
      const double v = class_w2_squared(classes[static_cast<std::size_t>(i)],
                                        classes[static_cast<std::size_t>(j)], cfg);
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }
  return out;
}

LabelDistanceMatrix label_distance_matrix(const LabeledDataset& a,
                                          const LabeledDataset& b,
                                          const LabelConfig& cfg) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "datasets '" + a.id + "' and '" + b.id +
                    "' have different feature dimensions");
  }
  if (same_samples(a, b)) return label_distance_matrix(a, cfg);
  const auto ca = split_by_class(a);
  const auto cb = split_by_class(b);
  LabelDistanceMatrix out{
      Eigen::MatrixXd(static_cast<Eigen::Index>(ca.size()),
                      static_cast<Eigen::Index>(cb.size())),
      cfg.method};
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          class_w2_squared(ca[i], cb[j], cfg);
    }
  }
  return out;
}

double soft_label_cost(const Eigen::Ref<const Eigen::VectorXd>& ya,
                       const Eigen::Ref<const Eigen::VectorXd>& yb,
                       const LabelDistanceMatrix& m) {
  if (ya.size() != m.rows() || yb.size() != m.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "label sizes " + std::to_string(ya.size()) + "x" +
                    std::to_string(yb.size()) + " do not match a " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " label matrix");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < ya.size(); ++i) {
    if (ya[i] == 0.0) continue;
    double row = 0.0;
    for (Eigen::Index j = 0; j < yb.size(); ++j) {
      if (yb[j] != 0.0) row += m.values(i, j) * yb[j];
    }
    total += ya[i] * row;
  }
  return total;
}

}  // namespace otgeo
