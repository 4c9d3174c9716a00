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
#include "otgeo/cli/run_config.hpp"

#include <fstream>
#include <string>

#include "otgeo/cli/key_values.hpp"
#include "otgeo/error.hpp"

namespace otgeo::cli {

OtddConfig RunConfig::otdd() const {
  OtddConfig cfg;
  cfg.ot.solver = solver;
  cfg.ot.sinkhorn.epsilon = epsilon;
  cfg.ot.sinkhorn.max_iters = max_iters;
  cfg.ot.exact.max_cells = exact_max_cells;
  cfg.label.method = label_method;
  cfg.label.class_cap = class_cap;
  cfg.label.seed = seed;
  return cfg;
}

ProjectionConfig RunConfig::projection() const {
  ProjectionConfig cfg;
  cfg.otdd = otdd();
  cfg.batch_size = batch_size;
  cfg.seed = seed;
  return cfg;
}

OtSolver parse_solver(const std::string& name) {
  if (name == "exact") return OtSolver::kExact;
  if (name == "sinkhorn") return OtSolver::kSinkhorn;
  throw Error(ErrorCode::kBadSpec, "unknown solver '" + name + "' (exact|sinkhorn)");
}

LabelMethod parse_label_method(const std::string& name) {
  if (name == "exact") return LabelMethod::kExact;
  if (name == "gaussian") return LabelMethod::kGaussian;
  throw Error(ErrorCode::kBadSpec,
              "unknown label method '" + name + "' (exact|gaussian)");
}

const char* solver_name(OtSolver solver) {
  return solver == OtSolver::kExact ? "exact" : "sinkhorn";
}

RunConfig parse_run_config(std::istream& in, RunConfig cfg) {
  for (const auto& kv : parse_key_values(in)) {
    if (kv.key == "solver") {
      if (kv.value != "exact" && kv.value != "sinkhorn") {
        bad_spec(kv.line, "unknown solver '" + kv.value + "' (exact|sinkhorn)");
      }
      cfg.solver = parse_solver(kv.value);
    } else if (kv.key == "epsilon") {
      const double eps = parse_real(kv);
      if (!(eps > 0.0)) bad_spec(kv.line, "epsilon must be positive");
      cfg.epsilon = eps;
    } else if (kv.key == "max_iters") {
      cfg.max_iters = static_cast<int>(parse_integer(kv, 1));
    } else if (kv.key == "label_method") {
      if (kv.value != "exact" && kv.value != "gaussian") {
        bad_spec(kv.line, "unknown label method '" + kv.value + "' (exact|gaussian)");
      }
      cfg.label_method = parse_label_method(kv.value);
    } else if (kv.key == "batch_size") {
      cfg.batch_size = parse_integer(kv, 0);
    } else if (kv.key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_integer(kv, 0));
    } else if (kv.key == "grid_resolution") {
      cfg.grid_resolution = static_cast<int>(parse_integer(kv, 1));
    } else if (kv.key == "class_cap") {
      cfg.class_cap = static_cast<std::size_t>(parse_integer(kv, 1));
    } else if (kv.key == "exact_max_cells") {
      cfg.exact_max_cells = static_cast<std::size_t>(parse_integer(kv, 1));
    } else {
      bad_spec(kv.line, "unknown setting '" + kv.key + "'");
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config '" + path.string() + "'");
  return parse_run_config(in, base);
}

}  // namespace otgeo::cli
