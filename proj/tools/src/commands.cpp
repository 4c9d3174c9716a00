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

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "otgeo/cli/gen_spec.hpp"
#include "otgeo/cli/run_config.hpp"
#include "otgeo/cli/svg.hpp"
#include "otgeo/dataset_io.hpp"
#include "otgeo/geodesic.hpp"
#include "otgeo/otdd.hpp"
#include "otgeo/projection.hpp"
#include "otgeo/transport_map.hpp"

namespace otgeo::cli {

namespace {

using nlohmann::json;

// Command-line overrides layered over an optional config file.
struct RunOptions {
  std::string config_path;
  std::optional<std::string> solver;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::optional<std::string> label_method;
  std::optional<std::uint64_t> seed;
  std::optional<Eigen::Index> batch_size;
  std::optional<std::size_t> class_cap;
  std::optional<std::size_t> exact_max_cells;
  std::string normalize;

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (solver) cfg.solver = parse_solver(*solver);
    if (epsilon) {
      if (!(*epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
      cfg.epsilon = epsilon;
    }
    if (max_iters) cfg.max_iters = *max_iters;
    if (label_method) cfg.label_method = parse_label_method(*label_method);
    if (seed) cfg.seed = *seed;
    if (batch_size) cfg.batch_size = *batch_size;
    if (class_cap) cfg.class_cap = *class_cap;
    if (exact_max_cells) cfg.exact_max_cells = *exact_max_cells;
    return cfg;
  }
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "key = value settings file");
  cmd->add_option("--solver", o.solver, "exact | sinkhorn")
      ->check(CLI::IsMember({"exact", "sinkhorn"}));
  cmd->add_option("--epsilon", o.epsilon, "Sinkhorn regularization");
  cmd->add_option("--max-iters", o.max_iters, "Sinkhorn iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--label-method", o.label_method, "exact | gaussian")
      ->check(CLI::IsMember({"exact", "gaussian"}));
  cmd->add_option("--seed", o.seed, "seed for subsampling and batching");
  cmd->add_option("--class-cap", o.class_cap, "samples per class in label distances")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--exact-max-cells", o.exact_max_cells, "cell cap for the exact solver")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--normalize", o.normalize, "feature normalization: zscore")
      ->check(CLI::IsMember({"zscore"}));
}

void maybe_normalize(const RunOptions& o, const std::vector<LabeledDataset*>& datasets) {
  if (o.normalize.empty()) return;
  std::vector<Eigen::MatrixXd*> features;
  for (auto* ds : datasets) features.push_back(&ds->features);
  zscore_normalize(features);
}

std::vector<LabeledDataset> load_all(const std::vector<std::string>& paths) {
  std::vector<LabeledDataset> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(load_dataset(p));
  return out;
}

void write_outputs(const LabeledDataset& ds, const std::string& path, const std::string& svg) {
  if (!path.empty()) save_dataset(ds, path);
  if (!svg.empty()) save_svg(ds, svg);
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

DatasetMap make_map(const LabeledDataset& q, const LabeledDataset& p, const RunConfig& cfg) {
  if (cfg.batch_size > 0) {
    return batched_barycentric_map(q, p, cfg.batch_size, cfg.seed, cfg.otdd());
  }
  return barycentric_map(q, p, cfg.otdd());
}

std::vector<double> parse_weight_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    const char* first = b == std::string::npos ? item.data() : item.data() + b;
    const char* last = e == std::string::npos ? item.data() : item.data() + e + 1;
    const auto res = std::from_chars(first, last, v);
    if (first == last || res.ec != std::errc() || res.ptr != last) {
      throw Error(ErrorCode::kBadWeights, "cannot parse weight '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::kBadWeights, "no weights given");
  return out;
}

struct Command {
  CLI::App* app = nullptr;
  std::function<void()> action;
};

}  // namespace

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kValidation: return kExitValidation;
    case ErrorCategory::kSolver: return kExitSolver;
    case ErrorCategory::kIo: return kExitIo;
  }
  return kExitValidation;
}

void zscore_normalize(const std::vector<Eigen::MatrixXd*>& features) {
  if (features.empty()) return;
  const auto d = features.front()->cols();
  Eigen::Index n = 0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (const auto* x : features) {
    if (x->cols() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "cannot normalize datasets of different dimension");
    }
    sum += x->colwise().sum().transpose();
    n += x->rows();
  }
  const Eigen::VectorXd mean = sum / static_cast<double>(n);
  Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
  for (const auto* x : features) {
    var += (x->rowwise() - mean.transpose()).array().square().colwise().sum().matrix().transpose();
  }
  Eigen::VectorXd scale = (var / static_cast<double>(n)).cwiseSqrt();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(scale[j] > 0.0)) scale[j] = 1.0;
  }
  for (auto* x : features) {
    *x = ((x->rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array()).matrix();
  }
}

LabeledDataset harden(const LabeledDataset& ds) {
  LabeledDataset out = ds;
  out.labels.setZero();
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    Eigen::Index cls = 0;
    ds.labels.row(i).maxCoeff(&cls);
    out.labels(i, cls) = 1.0;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal transport dataset interpolation and projection", "otgeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "otgeo 0.1.0");

  RunOptions opts;
  std::string out_path;
  std::string svg_path;
  std::vector<Command> commands;

  // gen
  std::string spec_path;
  {
    auto* c = app.add_subcommand("gen", "Generate a Gaussian mixture dataset from a spec");
    c->add_option("spec", spec_path, "generator spec file")->required();
    c->add_option("out", out_path, "output dataset (.csv or binary)")->required();
    c->add_option("--svg", svg_path, "also write a scatter plot");
    commands.push_back({c, [&] {
      const auto ds = generate(load_gen_spec(spec_path));
      write_outputs(ds, out_path, svg_path);
    }});
  }

  // otdd
  std::string file_a;
  std::string file_b;
  {
    auto* c = app.add_subcommand("otdd", "Squared OT dataset distance between two datasets");
    c->add_option("a", file_a, "first dataset")->required();
    c->add_option("b", file_b, "second dataset")->required();
    add_run_options(c, opts);
    commands.push_back({c, [&] {
      const auto cfg = opts.resolve();
      auto a = load_dataset(file_a);
      auto b = load_dataset(file_b);
      maybe_normalize(opts, {&a, &b});
      const auto r = otdd(a, b, cfg.otdd());
      json j;
      j["distance_squared"] = r.distance_squared;
      j["solver"] = solver_name(cfg.solver);
      j["epsilon"] = r.epsilon;
      out << j.dump(2) << '\n';
    }});
  }

  // map
  std::string source_path;
  std::string target_path;
  std::optional<Eigen::Index> batched;
  {
    auto* c = app.add_subcommand("map", "Push a source dataset through its barycentric map onto a target");
    c->add_option("source", source_path, "base dataset Q")->required();
    c->add_option("target", target_path, "dataset P to map onto")->required();
    c->add_option("--out,-o", out_path, "output dataset")->required();
    c->add_option("--batched", batched, "batch size for batched maps")->check(CLI::Range(2, 1 << 30));
    c->add_option("--svg", svg_path, "also write a scatter plot");
    add_run_options(c, opts);
    commands.push_back({c, [&] {
      auto cfg = opts.resolve();
      if (batched) cfg.batch_size = *batched;
      auto q = load_dataset(source_path);
      auto p = load_dataset(target_path);
      maybe_normalize(opts, {&q, &p});
      write_outputs(pushforward(make_map(q, p, cfg)), out_path, svg_path);
    }});
  }

  // interpolate / project / grid share target and source lists
  std::string q_path;
  std::vector<std::string> source_paths;
  std::string weights_text;
  bool mccann = false;
  double t = 0.0;
  bool harden_out = false;
  {
    auto* c = app.add_subcommand("interpolate", "Dataset on the generalized geodesic with base Q");
    c->add_option("target", q_path, "base dataset Q")->required();
    c->add_option("sources", source_paths, "source datasets P_1..P_m")->required();
    auto* w = c->add_option("--weights", weights_text, "comma-separated simplex weights");
    auto* m = c->add_flag("--mccann", mccann, "McCann interpolation between Q and one source");
    c->add_option("--t", t, "McCann time in [0, 1]")->needs(m);
    w->excludes(m);
    c->add_option("--out,-o", out_path, "output dataset")->required();
    c->add_flag("--harden", harden_out, "write argmax labels");
    c->add_option("--svg", svg_path, "also write a scatter plot");
    add_run_options(c, opts);
    commands.push_back({c, [&, w, m] {
      if (w->count() == 0 && m->count() == 0) {
        throw Error(ErrorCode::kInvalidArgument, "give --weights or --mccann");
      }
      const auto cfg = opts.resolve();
      auto q = load_dataset(q_path);
      auto sources = load_all(source_paths);
      std::vector<LabeledDataset*> all{&q};
      for (auto& s : sources) all.push_back(&s);
      maybe_normalize(opts, all);
      LabeledDataset result;
      if (mccann) {
        if (sources.size() != 1) {
          throw Error(ErrorCode::kInvalidArgument, "--mccann takes exactly one source");
        }
        result = mccann_dataset(q, make_map(q, sources.front(), cfg), t);
      } else {
        const auto raw = parse_weight_list(weights_text);
        if (raw.size() != sources.size()) {
          throw Error(ErrorCode::kBadWeights, std::to_string(raw.size()) + " weights for " +
                                                  std::to_string(sources.size()) + " sources");
        }
        const auto a = SimplexWeights::from(std::span<const double>(raw));
        std::vector<DatasetMap> maps;
        for (const auto& s : sources) maps.push_back(make_map(q, s, cfg));
        result = combine(maps, a, padded_space_for(maps));
      }
      write_outputs(harden_out ? harden(result) : result, out_path, svg_path);
    }});
  }

  {
    auto* c = app.add_subcommand("project", "Project Q onto the geodesic hull of the sources");
    c->add_option("target", q_path, "target dataset Q")->required();
    c->add_option("sources", source_paths, "source datasets P_1..P_m")->required();
    c->add_option("--out,-o", out_path, "write the dataset at the projection weights");
    c->add_option("--svg", svg_path, "also write a scatter plot");
    add_run_options(c, opts);
    commands.push_back({c, [&] {
      const auto cfg = opts.resolve();
      auto q = load_dataset(q_path);
      auto sources = load_all(source_paths);
      std::vector<LabeledDataset*> all{&q};
      for (auto& s : sources) all.push_back(&s);
      maybe_normalize(opts, all);
      const auto hull = build_geodesic_hull(q, sources, cfg.projection());
      const auto sol = solve_projection_weights(hull.problem);
      const auto& a = sol.a_hat.values();
      json j;
      j["a_hat"] = std::vector<double>(a.data(), a.data() + a.size());
      j["objective"] = sol.objective;
      const auto& d = hull.problem.to_target;
      j["per_dataset_distances"] = std::vector<double>(d.data(), d.data() + d.size());
      json pairwise = json::array();
      for (Eigen::Index i = 0; i < hull.problem.pairwise.rows(); ++i) {
        const Eigen::VectorXd row = hull.problem.pairwise.row(i).transpose();
        pairwise.push_back(std::vector<double>(row.data(), row.data() + row.size()));
      }
      j["pairwise"] = std::move(pairwise);
      out << j.dump(2) << '\n';
      if (!out_path.empty() || !svg_path.empty()) {
        write_outputs(combine(hull.maps, sol.a_hat, padded_space_for(hull.maps)), out_path,
                      svg_path);
      }
    }});
  }

  std::optional<int> resolution;
  {
    auto* c = app.add_subcommand("grid", "Surrogate distance over a simplex grid");
    c->add_option("target", q_path, "target dataset Q")->required();
    c->add_option("sources", source_paths, "source datasets P_1..P_m")->required();
    c->add_option("--resolution", resolution, "grid subdivisions per edge")
        ->check(CLI::PositiveNumber);
    c->add_option("--out,-o", out_path, "CSV output (stdout when omitted)");
    add_run_options(c, opts);
    commands.push_back({c, [&] {
      auto cfg = opts.resolve();
      if (resolution) cfg.grid_resolution = *resolution;
      auto q = load_dataset(q_path);
      auto sources = load_all(source_paths);
      std::vector<LabeledDataset*> all{&q};
      for (auto& s : sources) all.push_back(&s);
      maybe_normalize(opts, all);
      const auto hull = build_geodesic_hull(q, sources, cfg.projection());
      std::ostringstream csv;
      for (std::size_t i = 0; i < sources.size(); ++i) csv << 'a' << i + 1 << ',';
      csv << "surrogate\n";
      for (const auto& a : simplex_grid(hull.problem.size(), cfg.grid_resolution)) {
        for (Eigen::Index i = 0; i < a.size(); ++i) csv << format_real(a[i]) << ',';
        csv << format_real(surrogate(a, hull.problem)) << '\n';
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorCode::kIoError, "cannot open '" + out_path + "' for writing");
        f << csv.str();
        if (!f) throw Error(ErrorCode::kIoError, "failed writing '" + out_path + "'");
      }
    }});
  }

  std::string unlabeled_path;
  std::string few_shot_path;
  Eigen::Index k = 1;
  {
    auto* c = app.add_subcommand("pseudolabel", "k-nearest-neighbour labels from a few-shot set");
    c->add_option("unlabeled", unlabeled_path, "features to label")->required();
    c->add_option("fewshot", few_shot_path, "hard-labeled few-shot dataset")->required();
    c->add_option("--k", k, "neighbours per vote");
    c->add_option("--out,-o", out_path, "output dataset")->required();
    c->add_option("--svg", svg_path, "also write a scatter plot");
    commands.push_back({c, [&] {
      const auto x = load_features(unlabeled_path);
      const auto few = load_dataset(few_shot_path);
      auto ds = knn_pseudolabel(x, few, k, std::filesystem::path(unlabeled_path).stem().string());
      ds.class_names = few.class_names;
      write_outputs(ds, out_path, svg_path);
    }});
  }

  std::string harden_in;
  {
    auto* c = app.add_subcommand("harden", "Replace soft labels with argmax labels");
    c->add_option("in", harden_in, "input dataset")->required();
    c->add_option("out", out_path, "output dataset")->required();
    commands.push_back({c, [&] { save_dataset(harden(load_dataset(harden_in)), out_path); }});
  }

  std::vector<const char*> argv{"otgeo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    for (const auto& cmd : commands) {
      if (cmd.app->parsed()) cmd.action();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace otgeo::cli
