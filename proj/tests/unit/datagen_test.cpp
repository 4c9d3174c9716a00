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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "otgeo/ot.hpp"
#include "otgeo/otdd.hpp"

namespace otgeo {
namespace {

TEST(GaussianMixture, DegenerateComponentAtOrigin) {
  const auto ds = gaussian_mixture(5, {Eigen::Vector2d::Zero()}, {Eigen::Matrix2d::Zero()}, 3);
  EXPECT_TRUE(ds.features.isZero(0.0));
  EXPECT_EQ(hard_label_ids(ds), std::vector<Eigen::Index>(5, 0));
}

TEST(GaussianMixture, SeedDeterminism) {
  const std::vector<Eigen::VectorXd> means{Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 1)};
  const std::vector<Eigen::MatrixXd> covs{Eigen::Matrix2d::Identity(),
                                          (Eigen::Matrix2d() << 2, 0.5, 0.5, 1).finished()};
  const auto a = gaussian_mixture(20, means, covs, 9);
  const auto b = gaussian_mixture(20, means, covs, 9);
  const auto c = gaussian_mixture(20, means, covs, 10);
  EXPECT_EQ(a.features, b.features);
  EXPECT_NE(a.features, c.features);
}

TEST(GaussianMixture, Errors) {
  EXPECT_EQ(testing::error_of([] {
              gaussian_mixture(3, {Eigen::VectorXd::Zero(1)},
                               {Eigen::MatrixXd::Constant(1, 1, -1.0)}, 0);
            }),
            ErrorCode::kNotPSD);
  EXPECT_EQ(testing::error_of([] { gaussian_mixture(3, {Eigen::VectorXd::Zero(1)}, {}, 0); }),
            ErrorCode::kShapeMismatch);
}

TEST(Checkerboard, SixteenClassesNearGridMeans) {
  const int n = 1000;
  const double variance = 0.04;
  const auto ds = checkerboard(4, 4, 1.0, variance, n, 5);
  ASSERT_EQ(ds.num_classes(), 16);
  const auto classes = split_by_class(ds);
  const auto means = grid_means(4, 4, 1.0);
  const double bound = 4.0 * std::sqrt(variance) / std::sqrt(n);
  for (std::size_t c = 0; c < 16; ++c) {
    EXPECT_LE((classes[c].mean - means[c]).cwiseAbs().maxCoeff(), bound) << "class " << c;
    EXPECT_GE(means[c].minCoeff(), 0.0);
    EXPECT_LE(means[c].maxCoeff(), 3.0);
  }
}

TEST(ShiftedCopy, ZeroOffsetIsEqual) {
  Rng rng(1);
  const auto ds = testing::random_dataset(rng, 10, 2, 3);
  const auto copy = shifted_copy(ds, Eigen::Vector2d::Zero());
  EXPECT_EQ(copy.features, ds.features);
  EXPECT_EQ(copy.labels, ds.labels);
}

TEST(ShiftedCopy, TranslationCost) {
  Rng rng(2);
  const auto ds = testing::random_dataset(rng, 12, 1, 1);
  const auto moved = shifted_copy(ds, Eigen::VectorXd::Constant(1, 2.0));
  OtConfig cfg;
  cfg.solver = OtSolver::kExact;
  EXPECT_NEAR(w2_squared_empirical(ds.features, moved.features, cfg), 4.0, 1e-12);
}

TEST(ShiftedCopy, RelabeledCopyKeepsOtdd) {
  Rng rng(3);
  const auto q = testing::random_dataset(rng, 10, 2, 3);
  const auto p = testing::random_dataset(rng, 12, 2, 3, 2.0);
  const auto renamed = shifted_copy(p, Eigen::Vector2d::Zero(), std::vector<Eigen::Index>{1, 2, 0});
  EXPECT_EQ(renamed.class_names[1], p.class_names[0]);
  OtddConfig cfg;
  cfg.ot.solver = OtSolver::kExact;
  EXPECT_NEAR(otdd(q, p, cfg).distance_squared, otdd(q, renamed, cfg).distance_squared, 1e-12);
}

}  // namespace
}  // namespace otgeo
