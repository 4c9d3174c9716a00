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
#include "otgeo/ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "otgeo/error.hpp"
#include "otgeo/linalg.hpp"

namespace otgeo {

CostMatrix::CostMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "empty cost matrix");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, "cost matrix has non-finite entries");
  }
  if (values_.minCoeff() < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "cost matrix has negative entries");
  }
}

double Coupling::max_marginal_residual() const {
  const double rows = (plan.rowwise().sum() - row_marginal).cwiseAbs().maxCoeff();
  const double cols =
      (plan.colwise().sum().transpose() - col_marginal).cwiseAbs().maxCoeff();
  return std::max(rows, cols);
}

Eigen::VectorXd uniform_marginal(Eigen::Index n) {
  return Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
}

namespace {

void check_marginal(const Eigen::VectorXd& w, Eigen::Index expected,
                    bool strictly_positive, const char* name) {
  if (w.size() != expected) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " has " + std::to_string(w.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  if (!w.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, std::string(name) + " is not finite");
  }
  const double lo = w.minCoeff();
  if (strictly_positive ? lo <= 0.0 : lo < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + (strictly_positive ? " must be strictly positive"
                                                       : " must be nonnegative"));
  }
  if (std::abs(w.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must sum to 1 (sum " +
                    std::to_string(w.sum()) + ")");
  }
}

std::string format_real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Log-sum-exp of (potential - cost_column) / eps over a contiguous column.
double log_sum_exp(const double* cost, const Eigen::VectorXd& potential,
                   double eps) {
  const Eigen::Index len = potential.size();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < len; ++t) hi = std::max(hi, potential[t] - cost[t]);
  double acc = 0.0;
  for (Eigen::Index t = 0; t < len; ++t) acc += std::exp((potential[t] - cost[t] - hi) / eps);
  return hi / eps + std::log(acc);
}

class LogSinkhorn {
 public:
  LogSinkhorn(const Eigen::MatrixXd& cost, const Eigen::VectorXd& mu,
              const Eigen::VectorXd& nu)
      : cost_(cost),
        cost_t_(cost.transpose()),
        mu_(mu),
        nu_(nu),
        log_mu_(mu.array().log().matrix()),
        log_nu_(nu.array().log().matrix()),
        f_(Eigen::VectorXd::Zero(cost.rows())),
        g_(Eigen::VectorXd::Zero(cost.cols())),
        lse_rows_(cost.rows()) {}

  // Row marginal L1 violation of the current potentials at eps. Caches the
  // row log-sum-exps for the following update.
  double row_error(double eps) {
    double err = 0.0;
    for (Eigen::Index i = 0; i < cost_.rows(); ++i) {
      lse_rows_[i] = log_sum_exp(cost_t_.col(i).data(), g_, eps);
      err += std::abs(std::exp(f_[i] / eps + lse_rows_[i]) - mu_[i]);
    }
    return err;
  }

  // One pair of half-iterations, over-relaxed by omega (1 is plain Sinkhorn).
  // Requires row_error(eps) to have run first.
  void update(double eps, double omega = 1.0) {
    f_ += omega * (eps * (log_mu_ - lse_rows_) - f_);
    for (Eigen::Index j = 0; j < cost_.cols(); ++j) {
      const double target = eps * (log_nu_[j] - log_sum_exp(cost_.col(j).data(), f_, eps));
      g_[j] += omega * (target - g_[j]);
    }
  }

  // Damped Newton step on the dual, with g fixed at its last entry to remove
  // the constant shift. Backtracks on the L1 marginal residual; returns false
  // when no step reduces it.
  bool newton_step(double eps) {
    const Eigen::Index n = cost_.rows();
    const Eigen::Index k = cost_.cols();
    const Eigen::MatrixXd p = plan(eps);
    const Eigen::VectorXd rows = p.rowwise().sum();
    const Eigen::VectorXd cols = p.colwise().sum().transpose();
    const double base = residual(p);
    Eigen::VectorXd grad(n + k - 1);
    grad << mu_ - rows, (nu_ - cols).head(k - 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + k - 1, n + k - 1);
    h.topLeftCorner(n, n).diagonal() = rows;
    h.topRightCorner(n, k - 1) = p.leftCols(k - 1);
    h.bottomLeftCorner(k - 1, n) = p.leftCols(k - 1).transpose();
    h.bottomRightCorner(k - 1, k - 1).diagonal() = cols.head(k - 1);
    // Blocks joined only by underflowed entries make h singular; a tiny ridge
    // keeps the step defined and leaves the well-determined directions alone.
    h.diagonal().array() += 1e-12 * h.diagonal().maxCoeff();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() != Eigen::Success) return false;
    const Eigen::VectorXd step = eps * ldlt.solve(grad);
    if (!step.allFinite()) return false;
    const Eigen::VectorXd f0 = f_;
    const Eigen::VectorXd g0 = g_;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      f_ = f0 + t * step.head(n);
      g_.head(k - 1) = g0.head(k - 1) + t * step.tail(k - 1);
      if (residual(plan(eps)) < base) return true;
    }
    f_ = f0;
    g_ = g0;
    return false;
  }

  Eigen::MatrixXd plan(double eps) const {
    Eigen::MatrixXd p(cost_.rows(), cost_.cols());
    for (Eigen::Index j = 0; j < cost_.cols(); ++j) {
      for (Eigen::Index i = 0; i < cost_.rows(); ++i) {
        p(i, j) = std::exp((f_[i] + g_[j] - cost_(i, j)) / eps);
      }
    }
    return p;
  }

 private:
  double residual(const Eigen::MatrixXd& p) const {
    return (p.rowwise().sum() - mu_).lpNorm<1>() +
           (p.colwise().sum().transpose() - nu_).lpNorm<1>();
  }

  const Eigen::MatrixXd& cost_;
  Eigen::MatrixXd cost_t_;
  const Eigen::VectorXd& mu_;
  const Eigen::VectorXd& nu_;
  Eigen::VectorXd log_mu_;
  Eigen::VectorXd log_nu_;
  Eigen::VectorXd f_;
  Eigen::VectorXd g_;
  Eigen::VectorXd lse_rows_;
};

Eigen::MatrixXd sinkhorn_log(const Eigen::MatrixXd& c, const Eigen::VectorXd& mu,
                             const Eigen::VectorXd& nu, double eps,
                             const SinkhornConfig& cfg, int& iterations) {
  LogSinkhorn solver(c, mu, nu);
  iterations = 0;
  if (cfg.epsilon_scaling) {
    constexpr int kStageIters = 100;
    constexpr double kStageTolerance = 1e-3;
    double stage_eps = std::max(eps, c.maxCoeff());
    while (stage_eps > eps) {
      for (int it = 0; it < kStageIters && iterations < cfg.max_iters; ++it) {
        if (solver.row_error(stage_eps) <= kStageTolerance && it > 0) break;
        solver.update(stage_eps);
        ++iterations;
      }
      stage_eps = std::max(eps, 0.5 * stage_eps);
    }
  }
  // Plain iterations contract linearly at some rate theta that approaches 1
  // for small eps. Once theta has settled, switch to the over-relaxation
  // factor 2 / (1 + sqrt(1 - theta)); fall back to plain steps whenever a
  // window fails to reduce the error. Small problems close to the solution
  // take Newton steps instead.
  constexpr int kWindow = 10;
  constexpr Eigen::Index kNewtonMaxSize = 600;
  constexpr double kNewtonStart = 1e-2;
  bool newton = c.rows() + c.cols() <= kNewtonMaxSize;
  double omega = 1.0;
  double last_omega = 1.0;
  double window_start = std::numeric_limits<double>::infinity();
  double prev_rate = -1.0;
  int in_window = 0;
  double err = std::numeric_limits<double>::infinity();
  for (;;) {
    err = solver.row_error(eps);
    if (!std::isfinite(err)) {
      throw Error(ErrorCode::kNumericalUnderflow, "Sinkhorn potentials became non-finite");
    }
    if (err <= cfg.tolerance && iterations > 0) {
      // Relaxed steps leave the columns slightly off; finish with a plain one.
      if (last_omega == 1.0) break;
      omega = 1.0;
    }
    if (iterations >= cfg.max_iters) {
      throw Error(ErrorCode::kNoConvergence,
                  "Sinkhorn reached " + std::to_string(cfg.max_iters) +
                      " iterations with marginal error " + format_real(err));
    }
    if (in_window == kWindow) {
      const double rate = std::pow(err / window_start, 1.0 / kWindow);
      if (!(rate < 1.0)) {
        omega = 1.0;
        prev_rate = -1.0;
      } else if (omega == 1.0 && err > cfg.tolerance) {
        if (prev_rate > 0.0 && std::abs(rate - prev_rate) < 0.05 * (1.0 - prev_rate)) {
          omega = std::min(1.999, 2.0 / (1.0 + std::sqrt(1.0 - rate)));
        }
        prev_rate = rate;
      }
      in_window = 0;
    }
    if (newton && omega == 1.0 && err <= kNewtonStart &&
        err > cfg.tolerance) {
      newton = solver.newton_step(eps);
      if (newton) {
        last_omega = 0.0;  // marks a step that leaves the columns inexact
        ++iterations;
        continue;
      }
    }
    if (in_window == 0) window_start = err;
    solver.update(eps, omega);
    last_omega = omega;
    ++in_window;
    ++iterations;
  }
  return solver.plan(eps);
}

Eigen::MatrixXd sinkhorn_standard(const Eigen::MatrixXd& c,
                                  const Eigen::VectorXd& mu,
                                  const Eigen::VectorXd& nu, double eps,
                                  const SinkhornConfig& cfg, int& iterations) {
  const Eigen::MatrixXd kernel = (-c / eps).array().exp().matrix();
  // Vectorized exp saturates at subnormals rather than zero; treat anything
  // below the normal range as underflow.
  constexpr double kTiny = std::numeric_limits<double>::min();
  if (kernel.rowwise().sum().minCoeff() < kTiny ||
      kernel.colwise().sum().minCoeff() < kTiny) {
    throw Error(ErrorCode::kNumericalUnderflow,
                "Gibbs kernel has an all-zero row or column at epsilon " +
                    std::to_string(eps));
  }
  Eigen::VectorXd u = Eigen::VectorXd::Ones(c.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(c.cols());
  iterations = 0;
  for (;;) {
    const Eigen::VectorXd kv = kernel * v;
    const double err = (u.cwiseProduct(kv) - mu).cwiseAbs().sum();
    if (!std::isfinite(err)) {
      throw Error(ErrorCode::kNumericalUnderflow,
                  "scaling vectors became non-finite");
    }
    if (err <= cfg.tolerance && iterations > 0) break;
    if (iterations >= cfg.max_iters) {
      throw Error(ErrorCode::kNoConvergence,
                  "Sinkhorn reached " + std::to_string(cfg.max_iters) +
                      " iterations with marginal error " + format_real(err));
    }
    u = mu.cwiseQuotient(kv);
    const Eigen::VectorXd ktu = kernel.transpose() * u;
    if (ktu.minCoeff() < kTiny || !u.allFinite()) {
      throw Error(ErrorCode::kNumericalUnderflow,
                  "scaling vectors underflowed at epsilon " + std::to_string(eps));
    }
    v = nu.cwiseQuotient(ktu);
    ++iterations;
  }
  return u.asDiagonal() * kernel * v.asDiagonal();
}

}  // namespace

double resolve_epsilon(const CostMatrix& cost, const SinkhornConfig& cfg) {
  if (cfg.epsilon) {
    if (!(*cfg.epsilon > 0.0) || !std::isfinite(*cfg.epsilon)) {
      throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
    }
    return *cfg.epsilon;
  }
  if (!(cfg.relative_epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "relative_epsilon must be positive");
  }
  const double mean = cost.values().mean();
  // An all-zero cost has every coupling optimal; any epsilon works.
  return mean > 0.0 ? cfg.relative_epsilon * mean : 1.0;
}

TransportResult sinkhorn(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu, const SinkhornConfig& cfg) {
  check_marginal(mu, cost.rows(), true, "mu");
  check_marginal(nu, cost.cols(), true, "nu");
  if (!(cfg.tolerance > 0.0) || cfg.max_iters <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "Sinkhorn needs positive tolerance and max_iters");
  }
  TransportResult result;
  result.epsilon = resolve_epsilon(cost, cfg);
  Eigen::MatrixXd plan =
      cfg.log_domain
          ? sinkhorn_log(cost.values(), mu, nu, result.epsilon, cfg, result.iterations)
          : sinkhorn_standard(cost.values(), mu, nu, result.epsilon, cfg,
                              result.iterations);
  result.cost = cost.values().cwiseProduct(plan).sum();
  result.coupling = Coupling{std::move(plan), mu, nu};
  return result;
}

TransportResult solve_ot(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu, const OtConfig& cfg) {
  return cfg.solver == OtSolver::kExact ? exact_ot(cost, mu, nu, cfg.exact)
                                        : sinkhorn(cost, mu, nu, cfg.sinkhorn);
}

bool canonically_before(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

double w2_squared_empirical(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                            const OtConfig& cfg) {
  if (x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "sample dimensions differ");
  }
  if (x.rows() == 0 || y.rows() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "empty sample set");
  }
  if (x.rows() == y.rows() && x == y) return 0.0;
  const bool swap = canonically_before(y, x);
  const Eigen::MatrixXd& a = swap ? y : x;
  const Eigen::MatrixXd& b = swap ? x : y;
  const CostMatrix cost(linalg::squared_distances(a, b));
  return solve_ot(cost, uniform_marginal(a.rows()), uniform_marginal(b.rows()), cfg)
      .cost;
}

}  // namespace otgeo
