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
#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "otgeo/linalg.hpp"
#include "otgeo/ot.hpp"

namespace otgeo {
namespace {

Eigen::MatrixXd line(std::initializer_list<double> values) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) x(i++, 0) = v;
  return x;
}

TEST(ExactOt, MonotoneMatchingOnTheLine) {
  const auto c = linalg::squared_distances(line({0, 1}), line({2, 3}));
  const auto r = exact_ot(CostMatrix(c), uniform_marginal(2), uniform_marginal(2));
  EXPECT_DOUBLE_EQ(r.cost, 4.0);
  EXPECT_DOUBLE_EQ(r.coupling.plan(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(r.coupling.plan(1, 1), 0.5);
}

TEST(ExactOt, IdenticalMeasuresGiveZeroOnAPermutation) {
  Rng rng(1);
  const auto x = testing::random_matrix(rng, 6, 2);
  const auto r = exact_ot(CostMatrix(linalg::squared_distances(x, x)), uniform_marginal(6),
                          uniform_marginal(6));
  EXPECT_EQ(r.cost, 0.0);
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_EQ((r.coupling.plan.row(i).array() > 0).count(), 1);
  }
}

TEST(ExactOt, MatchesPermutationBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 6);
    const auto c = testing::random_matrix(rng, n, n, 0.0, 10.0);
    const auto r = exact_ot(CostMatrix(c), uniform_marginal(n), uniform_marginal(n));
    const double oracle = testing::brute_force_assignment(c);
    EXPECT_NEAR(r.cost, oracle, 1e-9 * std::max(1.0, oracle)) << "n = " << n;
  }
}

TEST(ExactOt, NonUniformMarginals) {
  // Two sources, one sink each side with split mass. Optimum computed by hand:
  // mu = (0.7, 0.3), nu = (0.4, 0.6), c = [[0, 1], [1, 0]]
  // -> send 0.4 along (0,0), 0.3 along (0,1), 0.3 along (1,1); cost 0.3.
  Eigen::Matrix2d c;
  c << 0, 1, 1, 0;
  const auto r =
      exact_ot(CostMatrix(c), Eigen::Vector2d(0.7, 0.3), Eigen::Vector2d(0.4, 0.6));
  EXPECT_NEAR(r.cost, 0.3, 1e-15);
  EXPECT_LE(r.coupling.max_marginal_residual(), 1e-12);
}

TEST(ExactOt, RectangularMarginalsAndVertexSupport) {
  Rng rng(5);
  const Eigen::Index n = 7;
  const Eigen::Index k = 4;
  const auto c = testing::random_matrix(rng, n, k, 0.0, 1.0);
  const auto r = exact_ot(CostMatrix(c), uniform_marginal(n), uniform_marginal(k));
  EXPECT_LE(r.coupling.max_marginal_residual(), 1e-12);
  EXPECT_LE((r.coupling.plan.array() > 0).count(), n + k - 1);
}

TEST(ExactOt, ProblemTooLarge) {
  ExactOtConfig cfg;
  cfg.max_cells = 10;
  EXPECT_EQ(testing::error_of([&] {
              exact_ot(CostMatrix(Eigen::MatrixXd::Ones(4, 4)), uniform_marginal(4),
                       uniform_marginal(4), cfg);
            }),
            ErrorCode::kProblemTooLarge);
}

TEST(ExactOt, ScalingPreservesSupport) {
  Rng rng(6);
  const auto c = testing::random_matrix(rng, 5, 5, 0.0, 1.0);
  const auto mu = uniform_marginal(5);
  const auto a = exact_ot(CostMatrix(c), mu, mu);
  const auto b = exact_ot(CostMatrix(3.0 * c), mu, mu);
  EXPECT_NEAR(b.cost, 3.0 * a.cost, 1e-12);
  EXPECT_EQ((a.coupling.plan.array() > 0).matrix(), (b.coupling.plan.array() > 0).matrix());
}

TEST(ExactOt, LargerInstanceAgreesWithSortedOneDimensional) {
  Rng rng(7);
  const auto x = testing::random_matrix(rng, 200, 1, -3, 3);
  const auto y = testing::random_matrix(rng, 200, 1, 0, 5);
  OtConfig cfg;
  cfg.solver = OtSolver::kExact;
  cfg.exact.max_cells = 200 * 200;
  const double w2 = w2_squared_empirical(x, y, cfg);
  EXPECT_NEAR(w2, testing::sorted_w2_1d(x.col(0), y.col(0)), 1e-9);
}

TEST(W2Empirical, KnownValuesAndSymmetry) {
  OtConfig cfg;
  cfg.solver = OtSolver::kExact;
  EXPECT_EQ(w2_squared_empirical(line({0, 1}), line({0, 1}), cfg), 0.0);
  EXPECT_DOUBLE_EQ(w2_squared_empirical(line({0, 1}), line({2, 3}), cfg), 4.0);
  Rng rng(8);
  const auto a = testing::random_matrix(rng, 6, 2);
  const auto b = testing::random_matrix(rng, 5, 2);
  EXPECT_EQ(w2_squared_empirical(a, b, cfg), w2_squared_empirical(b, a, cfg));
}

}  // namespace
}  // namespace otgeo
