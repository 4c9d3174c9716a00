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

#include <sstream>

#include "oracles.hpp"
#include "otgeo/cli/gen_spec.hpp"
#include "otgeo/cli/run_config.hpp"

namespace otgeo::cli {
namespace {

std::string message_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_gen_spec(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadSpec);
    return e.what();
  }
  return {};
}

TEST(RunConfig, ParsesEveryKey) {
  std::istringstream in(
      "# comment\n"
      "solver = exact\n"
      "epsilon = 0.5\n"
      "max_iters = 77\n"
      "label_method = gaussian\n"
      "batch_size = 64\n"
      "seed = 12\n"
      "grid_resolution = 9\n"
      "class_cap = 40\n"
      "exact_max_cells = 100\n");
  const auto cfg = parse_run_config(in);
  EXPECT_EQ(cfg.solver, OtSolver::kExact);
  EXPECT_EQ(cfg.epsilon, 0.5);
  EXPECT_EQ(cfg.max_iters, 77);
  EXPECT_EQ(cfg.label_method, LabelMethod::kGaussian);
  EXPECT_EQ(cfg.batch_size, 64);
  EXPECT_EQ(cfg.seed, 12u);
  EXPECT_EQ(cfg.grid_resolution, 9);
  const auto otdd = cfg.otdd();
  EXPECT_EQ(otdd.label.class_cap, 40u);
  EXPECT_EQ(otdd.ot.exact.max_cells, 100u);
  EXPECT_EQ(otdd.ot.sinkhorn.epsilon, 0.5);
  EXPECT_EQ(cfg.projection().batch_size, 64);
}

TEST(RunConfig, ErrorsNameTheLine) {
  for (const char* text : {"solver = exact\nsolver = simplex\n", "\nmax_iters = -3\n",
                           "seed = 1\nbogus = 2\n", "# c\nepsilon\n"}) {
    std::istringstream in(text);
    try {
      parse_run_config(in);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadSpec);
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
  }
}

TEST(GenSpec, GridAndMixtureForms) {
  std::istringstream grid("seed = 3\nn_per_class = 4\ngrid = 4x4\nspacing = 2\n");
  const auto g = generate(parse_gen_spec(grid));
  EXPECT_EQ(g.num_classes(), 16);
  EXPECT_EQ(g.size(), 64);

  std::istringstream mix(
      "n_per_class = 3\nmean = 0 0 0\ncov = 1 0 0 0 1 0 0 0 1\nmean = 1,1,1\ncov = 0.5\n"
      "offset = 1 2 3\nrelabel = 1 0\nid = mixed\n");
  const auto spec = parse_gen_spec(mix);
  EXPECT_EQ(spec.covs.size(), 2u);
  EXPECT_EQ(spec.covs[1], 0.5 * Eigen::Matrix3d::Identity());
  const auto m = generate(spec);
  EXPECT_EQ(m.dim(), 3);
  EXPECT_EQ(m.id, "mixed");
  EXPECT_EQ(hard_label_ids(m)[0], 1);
}

TEST(GenSpec, MalformedSpecsReportLines) {
  EXPECT_NE(message_of("seed = 1\ngrid = 4by4\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("mean = 0 0\ncov = 1 2 3\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("mean = 0 0\nmean = 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("n_per_class = 0\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("seed 4\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("mean = 0\ncov = 1\nmean = 2\ncolour = red\n").find("line 4"),
            std::string::npos);
  EXPECT_NE(message_of("mean = 0\ncov = 1\nmean = 2\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("seed = 2\n").find("neither"), std::string::npos);
}

}  // namespace
}  // namespace otgeo::cli
