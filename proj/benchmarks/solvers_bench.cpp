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
#include <benchmark/benchmark.h>

#include <span>
#include <vector>

#include "otgeo/datagen.hpp"
#include "otgeo/ot.hpp"
#include "otgeo/otdd.hpp"
#include "otgeo/projection.hpp"
#include "otgeo/random.hpp"
#include "otgeo/transport_map.hpp"

namespace {

using otgeo::CostMatrix;

CostMatrix random_cost(Eigen::Index n, std::uint64_t seed) {
  otgeo::Rng rng(seed);
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) c(i, j) = rng.uniform();
  return CostMatrix(std::move(c));
}

otgeo::LabeledDataset blobs(Eigen::Index n_per_class, double shift, std::uint64_t seed) {
  const std::vector<Eigen::VectorXd> means = {Eigen::Vector2d(shift, 0.0),
                                              Eigen::Vector2d(shift + 3.0, 1.0),
                                              Eigen::Vector2d(shift, 3.0)};
  const std::vector<Eigen::MatrixXd> covs(3, 0.3 * Eigen::MatrixXd::Identity(2, 2));
  return otgeo::gaussian_mixture(n_per_class, means, covs, seed);
}

void BM_Sinkhorn(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const CostMatrix c = random_cost(n, 1);
  const Eigen::VectorXd w = otgeo::uniform_marginal(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(otgeo::sinkhorn(c, w, w, {}).cost);
  }
}
BENCHMARK(BM_Sinkhorn)->Arg(8)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ExactOt(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const CostMatrix c = random_cost(n, 2);
  const Eigen::VectorXd w = otgeo::uniform_marginal(n);
  otgeo::ExactOtConfig cfg;
  cfg.max_cells = static_cast<std::size_t>(n * n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(otgeo::exact_ot(c, w, w, cfg).cost);
  }
}
BENCHMARK(BM_ExactOt)->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Otdd(benchmark::State& state) {
  const auto q = blobs(state.range(0), 0.0, 3);
  const auto p = blobs(state.range(0), 1.0, 4);
  otgeo::OtddConfig cfg;
  cfg.ot.solver = state.range(1) ? otgeo::OtSolver::kExact : otgeo::OtSolver::kSinkhorn;
  cfg.ot.exact.max_cells = 1'000'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(otgeo::otdd(q, p, cfg).distance_squared);
  }
}
BENCHMARK(BM_Otdd)->Args({20, 0})->Args({20, 1})->Args({100, 0})->Args({100, 1})
    ->Unit(benchmark::kMillisecond);

void BM_BarycentricMap(benchmark::State& state) {
  const auto q = blobs(100, 0.0, 5);
  const auto p = blobs(100, 2.0, 6);
  const Eigen::Index batch = state.range(0);
  for (auto _ : state) {
    const auto map = batch > 0 ? otgeo::batched_barycentric_map(q, p, batch, 7, {})
                               : otgeo::barycentric_map(q, p, {});
    benchmark::DoNotOptimize(map.mapped_features.data());
  }
}
BENCHMARK(BM_BarycentricMap)->Arg(0)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& state) {
  const auto target = blobs(30, 1.0, 8);
  const std::vector<otgeo::LabeledDataset> sources = {blobs(30, 0.0, 9), blobs(30, 2.0, 10),
                                                      blobs(30, 4.0, 11)};
  for (auto _ : state) {
    const auto hull = otgeo::build_geodesic_hull(target, sources, {});
    benchmark::DoNotOptimize(otgeo::solve_projection_weights(hull.problem).objective);
  }
}
BENCHMARK(BM_Projection)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
