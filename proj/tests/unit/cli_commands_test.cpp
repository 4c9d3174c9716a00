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
#include "otgeo/cli/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "otgeo/dataset_io.hpp"
#include "otgeo/linalg.hpp"
#include "otgeo/ot.hpp"

namespace otgeo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("otgeo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  Outcome call(std::vector<std::string> args) const {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  // Generates a dataset from spec text and returns its path.
  std::string gen(const std::string& name, const std::string& spec) const {
    write(name + ".spec", spec);
    const auto r = call({"gen", path(name + ".spec"), path(name)});
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

constexpr const char* kTwoClass =
    "seed = 1\nn_per_class = 8\nmean = 0 0\ncov = 0.2\nmean = 4 0\ncov = 0.2\n";

TEST_F(Cli, GenCheckerboardAndDeterminism) {
  write("g.spec", "seed = 4\nn_per_class = 5\ngrid = 4x4\nspacing = 3\nvariance = 0.1\n");
  ASSERT_EQ(call({"gen", path("g.spec"), path("a.bin"), "--svg", path("a.svg")}).code, 0);
  ASSERT_EQ(call({"gen", path("g.spec"), path("b.bin")}).code, 0);
  EXPECT_EQ(read("a.bin"), read("b.bin"));
  EXPECT_EQ(load_dataset(path("a.bin")).num_classes(), 16);
  EXPECT_NE(read("a.svg").find("<circle"), std::string::npos);
}

TEST_F(Cli, GenBadSpec) {
  write("bad.spec", "seed = 1\ngrid = 3\n");
  const auto r = call({"gen", path("bad.spec"), path("x.csv")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("BadSpec"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, OtddSelfAndJsonShape) {
  const auto a = gen("a.csv", kTwoClass);
  const auto r = call({"otdd", a, a, "--solver", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j["distance_squared"].get<double>(), 1e-9);
  EXPECT_EQ(j["solver"], "exact");
  // Keys are sorted.
  EXPECT_LT(r.out.find("distance_squared"), r.out.find("epsilon"));
  EXPECT_LT(r.out.find("epsilon"), r.out.find("solver"));
}

TEST_F(Cli, OtddDimensionMismatch) {
  const auto a = gen("a.csv", kTwoClass);
  const auto b = gen("b.csv", "n_per_class = 3\nmean = 0 0 0\n");
  const auto r = call({"otdd", a, b});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos);
}

TEST_F(Cli, OtddRelabeledCopy) {
  const auto a = gen("a.csv", kTwoClass);
  const auto b = gen("b.csv", "seed = 9\nn_per_class = 8\nmean = 1 1\ncov = 0.3\nmean = 5 0\ncov = 0.1\n");
  const auto c = gen("c.csv",
                     "seed = 9\nn_per_class = 8\nmean = 1 1\ncov = 0.3\nmean = 5 0\ncov = 0.1\n"
                     "relabel = 1 0\n");
  const auto rb = json::parse(call({"otdd", a, b, "--solver", "exact"}).out);
  const auto rc = json::parse(call({"otdd", a, c, "--solver", "exact"}).out);
  EXPECT_NEAR(rb["distance_squared"].get<double>(), rc["distance_squared"].get<double>(), 1e-9);
}

TEST_F(Cli, MapOntoItself) {
  const auto q = gen("q.csv", kTwoClass);
  ASSERT_EQ(call({"map", q, q, "-o", path("m.csv"), "--solver", "exact"}).code, 0);
  const auto mapped = load_dataset(path("m.csv"));
  const auto orig = load_dataset(q);
  const auto c = linalg::squared_distances(mapped.features, orig.features);
  EXPECT_EQ(exact_ot(CostMatrix(c), uniform_marginal(orig.size()), uniform_marginal(orig.size()),
                     {1 << 20})
                .cost,
            0.0);
}

TEST_F(Cli, BatchedWithLargeBatchMatchesUnbatched) {
  const auto q = gen("q.csv", kTwoClass);
  const auto p = gen("p.csv", "seed = 5\nn_per_class = 8\nmean = 1 2\ncov = 0.4\nmean = 3 3\ncov = 0.4\n");
  ASSERT_EQ(call({"map", q, p, "-o", path("full.csv"), "--solver", "exact"}).code, 0);
  ASSERT_EQ(call({"map", q, p, "-o", path("batch.csv"), "--solver", "exact", "--batched", "64"}).code,
            0);
  EXPECT_EQ(read("full.csv"), read("batch.csv"));
  const auto mapped = load_dataset(path("batch.csv"));
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    EXPECT_NEAR(mapped.labels.row(i).sum(), 1.0, 1e-12);
  }
}

TEST_F(Cli, InterpolateVertexAndMccann) {
  const auto q = gen("q.csv", kTwoClass);
  const auto p1 = gen("p1.csv", "seed = 5\nn_per_class = 8\nmean = 1 2\ncov = 0.4\nmean = 3 3\ncov = 0.4\n");
  const auto p2 = gen("p2.csv", "seed = 6\nn_per_class = 16\nmean = -2 0\ncov = 0.4\n");
  ASSERT_EQ(call({"map", q, p2, "-o", path("push.csv")}).code, 0);
  ASSERT_EQ(call({"interpolate", q, p1, p2, "--weights", "0,1", "-o", path("v.csv")}).code, 0);
  const auto push = load_dataset(path("push.csv"));
  const auto v = load_dataset(path("v.csv"));
  EXPECT_EQ(v.features, push.features);
  EXPECT_EQ(Eigen::MatrixXd(v.labels.rightCols(1)), push.labels);

  ASSERT_EQ(call({"interpolate", q, p1, "--mccann", "--t", "0", "-o", path("t0.csv")}).code, 0);
  const auto t0 = load_dataset(path("t0.csv"));
  const auto orig = load_dataset(q);
  EXPECT_EQ(t0.features, orig.features);
  EXPECT_EQ(Eigen::MatrixXd(t0.labels.leftCols(2)), orig.labels);

  const auto bad = call({"interpolate", q, p1, p2, "--weights", "0.7,0.7", "-o", path("b.csv")});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_NE(bad.err.find("BadWeights"), std::string::npos);
  const auto count = call({"interpolate", q, p1, p2, "--weights", "1", "-o", path("b.csv")});
  EXPECT_NE(count.err.find("BadWeights"), std::string::npos);
}

TEST_F(Cli, ProjectFindsDuplicateOfTarget) {
  const auto q = gen("q.csv", kTwoClass);
  const auto p1 = gen("p1.csv", "seed = 5\nn_per_class = 8\nmean = 1 2\ncov = 0.4\nmean = 3 3\ncov = 0.4\n");
  const auto p2 = gen("p2.csv", "seed = 6\nn_per_class = 16\nmean = -2 0\ncov = 0.4\n");
  const auto r =
      call({"project", q, p1, q, p2, "--solver", "exact", "--out", path("proj.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_GE(j["a_hat"][1].get<double>(), 0.999);
  EXPECT_LE(j["objective"].get<double>(), 1e-6);
  EXPECT_EQ(j["pairwise"].size(), 3u);
  EXPECT_EQ(j["per_dataset_distances"].size(), 3u);
  EXPECT_TRUE(fs::exists(path("proj.csv")));
}

TEST_F(Cli, ProjectSymmetricPairAndSingleSource) {
  const auto q = gen("q.csv", "seed = 2\nn_per_class = 12\nmean = 0 0\ncov = 1\n");
  const auto east = gen("e.csv", "seed = 2\nn_per_class = 12\nmean = 0 0\ncov = 1\noffset = 2 0\n");
  const auto west = gen("w.csv", "seed = 2\nn_per_class = 12\nmean = 0 0\ncov = 1\noffset = -2 0\n");
  const auto j = json::parse(call({"project", q, east, west, "--solver", "exact"}).out);
  EXPECT_NEAR(j["a_hat"][0].get<double>(), 0.5, 1e-4);
  EXPECT_NEAR(j["a_hat"][1].get<double>(), 0.5, 1e-4);
  const auto one = json::parse(call({"project", q, east, "--solver", "exact"}).out);
  EXPECT_EQ(one["a_hat"][0].get<double>(), 1.0);
}

TEST_F(Cli, GridRowsVerticesAndMinimum) {
  const auto q = gen("q.csv", kTwoClass);
  const auto p1 = gen("p1.csv", "seed = 5\nn_per_class = 8\nmean = 1 2\ncov = 0.4\nmean = 3 3\ncov = 0.4\n");
  const auto p2 = gen("p2.csv", "seed = 6\nn_per_class = 16\nmean = -2 0\ncov = 0.4\n");
  const auto p3 = gen("p3.csv", "seed = 7\nn_per_class = 8\nmean = 0 -2\nmean = 2 -2\n");
  const auto r = call({"grid", q, p1, p2, p3, "--resolution", "7", "--solver", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "a1,a2,a3,surrogate");
  const auto proj = json::parse(call({"project", q, p1, p2, p3, "--solver", "exact"}).out);
  int rows = 0;
  double best = 1e300;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 4u);
    best = std::min(best, v[3]);
    for (int i = 0; i < 3; ++i) {
      if (v[static_cast<std::size_t>(i)] == 1.0) {
        EXPECT_EQ(v[3], proj["per_dataset_distances"][static_cast<std::size_t>(i)].get<double>());
      }
    }
  }
  EXPECT_EQ(rows, 36);
  EXPECT_GE(best, proj["objective"].get<double>() - 1e-12);
}

TEST_F(Cli, Pseudolabel) {
  write("u.csv", "x0\n0\n1\n9\n");
  write("few.csv", "x0,y\n0,0\n10,1\n");
  ASSERT_EQ(call({"pseudolabel", path("u.csv"), path("few.csv"), "--k", "1", "-o", path("l.csv")}).code,
            0);
  const auto ds = load_dataset(path("l.csv"));
  EXPECT_EQ(hard_label_ids(ds), (std::vector<Eigen::Index>{0, 0, 1}));
  const auto r = call({"pseudolabel", path("u.csv"), path("few.csv"), "--k", "5", "-o", path("l.csv")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("KTooLarge"), std::string::npos);
}

TEST_F(Cli, HardenAndNormalize) {
  const auto q = gen("q.csv", kTwoClass);
  const auto p = gen("p.csv", "seed = 5\nn_per_class = 8\nmean = 1 2\ncov = 0.4\nmean = 3 3\ncov = 0.4\n");
  ASSERT_EQ(call({"map", q, p, "-o", path("soft.csv")}).code, 0);
  ASSERT_EQ(call({"harden", path("soft.csv"), path("hard.csv")}).code, 0);
  EXPECT_TRUE(is_hard_labeled(load_dataset(path("hard.csv"))));
  const auto r = call({"otdd", q, p, "--normalize", "zscore", "--solver", "exact"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, ConfigFileAndOverrides) {
  const auto q = gen("q.csv", kTwoClass);
  write("run.cfg", "solver = exact\n");
  auto j = json::parse(call({"otdd", q, q, "--config", path("run.cfg")}).out);
  EXPECT_EQ(j["solver"], "exact");
  j = json::parse(call({"otdd", q, q, "--config", path("run.cfg"), "--solver", "sinkhorn"}).out);
  EXPECT_EQ(j["solver"], "sinkhorn");
  write("bad.cfg", "solver = exact\nfoo = 1\n");
  EXPECT_EQ(call({"otdd", q, q, "--config", path("bad.cfg")}).code, kExitValidation);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(call({"otdd", path("nope.csv"), path("nope.csv")}).code, kExitIo);
  EXPECT_EQ(call({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
  const auto q = gen("q.csv", kTwoClass);
  const auto r = call({"otdd", q, q, "--solver", "exact", "--exact-max-cells", "4"});
  EXPECT_EQ(r.code, kExitSolver);
  EXPECT_NE(r.err.find("ProblemTooLarge"), std::string::npos);
}

}  // namespace
}  // namespace otgeo::cli
