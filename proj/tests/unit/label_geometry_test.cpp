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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "otgeo/datagen.hpp"

namespace otgeo {
namespace {

Eigen::MatrixXd m1(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }
Eigen::VectorXd v1(double v) { return Eigen::VectorXd::Constant(1, v); }

TEST(Bures, IdenticalGaussiansAreZero) {
  Eigen::Matrix2d cov;
  cov << 2, 0.5, 0.5, 1;
  EXPECT_NEAR(bures_w2_squared(Eigen::Vector2d(1, 2), cov, Eigen::Vector2d(1, 2), cov), 0.0,
              1e-12);
}

TEST(Bures, OneDimensionalClosedForm) {
  EXPECT_NEAR(bures_w2_squared(v1(0), m1(1), v1(2), m1(4)), 5.0, 1e-9);
}

TEST(Bures, DiagonalCovariancesDecompose) {
  const Eigen::Vector3d s1(1.0, 4.0, 0.25);
  const Eigen::Vector3d s2(9.0, 1.0, 2.0);
  const Eigen::Vector3d mu1(0, 1, 2);
  const Eigen::Vector3d mu2(1, -1, 2);
  double per_axis = 0.0;
  for (int i = 0; i < 3; ++i) {
    per_axis += std::pow(mu1[i] - mu2[i], 2) + std::pow(std::sqrt(s1[i]) - std::sqrt(s2[i]), 2);
  }
  EXPECT_NEAR(bures_w2_squared(mu1, s1.asDiagonal().toDenseMatrix(), mu2,
                               s2.asDiagonal().toDenseMatrix()),
              per_axis, 1e-12);
}

TEST(Bures, RejectsNonPsd) {
  EXPECT_EQ(testing::error_of([] { bures_w2_squared(v1(0), m1(-1), v1(0), m1(1)); }),
            ErrorCode::kNotPSD);
}

LabeledDataset two_class_line() {
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 2, 3;
  const Eigen::Index ids[] = {0, 0, 1, 1};
  return make_hard_dataset(x, ids, 2);
}

TEST(LabelDistanceMatrix, SelfIsSymmetricWithZeroDiagonal) {
  Rng rng(3);
  const auto ds = testing::random_dataset(rng, 30, 2, 4);
  for (auto method : {LabelMethod::kExact, LabelMethod::kGaussian}) {
    LabelConfig cfg;
    cfg.method = method;
    const auto m = label_distance_matrix(ds, ds, cfg);
    EXPECT_EQ(m.values, m.values.transpose());
    EXPECT_TRUE(m.values.diagonal().isZero(0.0));
    EXPECT_GE(m.values.minCoeff(), 0.0);
  }
}

TEST(LabelDistanceMatrix, CoincidingSingleClassesGiveZero) {
  Rng rng(4);
  const auto a = testing::random_dataset(rng, 8, 2, 1);
  auto b = a;
  b.class_names = {"other"};
  const auto m = label_distance_matrix(a, b, {});
  ASSERT_EQ(m.rows(), 1);
  EXPECT_EQ(m.values(0, 0), 0.0);
}

TEST(LabelDistanceMatrix, ExactLineExample) {
  const auto m = label_distance_matrix(two_class_line(), {});
  EXPECT_DOUBLE_EQ(m.values(0, 1), 4.0);
}

TEST(LabelDistanceMatrix, RelabelingPermutesExactly) {
  Rng rng(5);
  const auto a = testing::random_dataset(rng, 40, 2, 3);
  const auto b = testing::random_dataset(rng, 35, 2, 4, 2.0);
  const std::vector<Eigen::Index> pa{2, 0, 1};
  const std::vector<Eigen::Index> pb{3, 1, 0, 2};
  const auto ra = shifted_copy(a, Eigen::Vector2d::Zero(), pa);
  const auto rb = shifted_copy(b, Eigen::Vector2d::Zero(), pb);
  for (auto method : {LabelMethod::kExact, LabelMethod::kGaussian}) {
    LabelConfig cfg;
    cfg.method = method;
    cfg.class_cap = 5;  // forces subsampling inside large classes
    const auto m = label_distance_matrix(a, b, cfg);
    const auto rm = label_distance_matrix(ra, rb, cfg);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) {
        EXPECT_EQ(rm.values(pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(j)]),
                  m.values(i, j));
      }
    }
  }
}

TEST(LabelDistanceMatrix, ExactAndGaussianAgreeOnGaussianClasses) {
  const auto a = gaussian_mixture(500, {v1(0.0)}, {m1(1.0)}, 1);
  const auto b = gaussian_mixture(500, {v1(2.0)}, {m1(4.0)}, 2);
  LabelConfig exact;
  LabelConfig gauss;
  gauss.method = LabelMethod::kGaussian;
  const double e = label_distance_matrix(a, b, exact).values(0, 0);
  const double g = label_distance_matrix(a, b, gauss).values(0, 0);
  EXPECT_LE(std::abs(e - g), 0.1 * g);
}

TEST(LabelDistanceMatrix, EmptyClassIsAnError) {
  const Eigen::Index ids[] = {0, 0};
  const auto ds = make_hard_dataset(Eigen::MatrixXd::Zero(2, 1), ids, 2);
  EXPECT_EQ(testing::error_of([&] { label_distance_matrix(ds, two_class_line(), {}); }),
            ErrorCode::kEmptyClass);
}

TEST(SoftLabelCost, BilinearForm) {
  LabelDistanceMatrix m{Eigen::MatrixXd(2, 3), LabelMethod::kExact};
  m.values << 0, 1, 2, 3, 4, 5;
  EXPECT_EQ(soft_label_cost(Eigen::Vector2d(0, 1), Eigen::Vector3d(0, 0, 1), m), 5.0);
  EXPECT_DOUBLE_EQ(soft_label_cost(Eigen::Vector2d(0.5, 0.5), Eigen::Vector3d(0, 1, 0), m),
                   (1.0 + 4.0) / 2);
  LabelDistanceMatrix zero{Eigen::MatrixXd::Zero(2, 3), LabelMethod::kExact};
  EXPECT_EQ(soft_label_cost(Eigen::Vector2d(0.3, 0.7), Eigen::Vector3d(0.2, 0.3, 0.5), zero), 0.0);
  EXPECT_EQ(testing::error_of([&] { soft_label_cost(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 0, 0), m); }),
            ErrorCode::kShapeMismatch);
}

TEST(SoftLabelCost, LinearInEachArgument) {
  Rng rng(6);
  LabelDistanceMatrix m{testing::random_matrix(rng, 3, 3, 0, 5), LabelMethod::kExact};
  const Eigen::Vector3d y(0.2, 0.5, 0.3);
  const Eigen::Vector3d yp(0.6, 0.1, 0.3);
  const Eigen::Vector3d z(0.1, 0.1, 0.8);
  const double alpha = 0.37;
  const Eigen::Vector3d mix = alpha * y + (1 - alpha) * yp;
  EXPECT_NEAR(soft_label_cost(mix, z, m),
              alpha * soft_label_cost(y, z, m) + (1 - alpha) * soft_label_cost(yp, z, m), 1e-12);
}

}  // namespace
}  // namespace otgeo
