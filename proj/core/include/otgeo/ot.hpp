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
#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace otgeo {

// Nonnegative, finite transport costs between n sources and k targets.
class CostMatrix {
 public:
  // Throws kNonFiniteValue or kInvalidArgument (negative entry).
  explicit CostMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

// A transport plan together with the marginals it was solved for.
struct Coupling {
  Eigen::MatrixXd plan;  // n x k, nonnegative
  Eigen::VectorXd row_marginal;
  Eigen::VectorXd col_marginal;

  // max over rows and columns of |plan sum - marginal|.
  double max_marginal_residual() const;
};

struct TransportResult {
  Coupling coupling;
  double cost = 0.0;  // sum_ij c_ij * plan_ij
  int iterations = 0;
  double epsilon = 0.0;  // regularization actually used (Sinkhorn only)
};

struct SinkhornConfig {
  // Absolute regularization. When unset, relative_epsilon * mean(cost).
  std::optional<double> epsilon;
  double relative_epsilon = 0.01;
  int max_iters = 20000;
  // Stop once the L1 row-marginal violation drops below this.
  double tolerance = 1e-9;
  bool log_domain = true;
  // Warm-start from a geometric sequence of larger epsilons (log domain).
  bool epsilon_scaling = true;
};

struct ExactOtConfig {
  std::size_t max_cells = 4096;
};

enum class OtSolver { kExact, kSinkhorn };

struct OtConfig {
  OtSolver solver = OtSolver::kSinkhorn;
  SinkhornConfig sinkhorn;
  ExactOtConfig exact;
};

Eigen::VectorXd uniform_marginal(Eigen::Index n);

// Regularization Sinkhorn will use for this cost and config.
double resolve_epsilon(const CostMatrix& cost, const SinkhornConfig& cfg);

// Entropic OT. mu and nu must be strictly positive and sum to 1.
// Throws kNoConvergence, kNumericalUnderflow (standard domain only) or
// kInvalidArgument.
TransportResult sinkhorn(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu,
                         const SinkhornConfig& cfg = {});

// Unregularized OT by the transportation simplex method. Returns an optimal
// vertex of the transportation polytope. Throws kProblemTooLarge when
// n * k exceeds cfg.max_cells.
TransportResult exact_ot(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu,
                         const ExactOtConfig& cfg = {});

TransportResult solve_ot(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu, const OtConfig& cfg);

// W2^2 between the uniform empirical measures on the rows of x and y.
// Argument order is canonicalized, so the result is exactly symmetric.
double w2_squared_empirical(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                            const OtConfig& cfg);

// Strict weak order on sample matrices (shape, then lexicographic entries).
bool canonically_before(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace otgeo
