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
#include "otgeo/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "otgeo/error.hpp"

namespace otgeo {

void validate(const ProjectionProblem& prob) {
  const auto m = prob.size();
  if (m < 1 || prob.pairwise.rows() != m || prob.pairwise.cols() != m) {
    throw Error(ErrorCode::kShapeMismatch,
                "projection problem with " + std::to_string(m) +
                    " distances and a " + std::to_string(prob.pairwise.rows()) +
                    "x" + std::to_string(prob.pairwise.cols()) + " pairwise matrix");
  }
  if (!prob.to_target.allFinite() || !prob.pairwise.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, "projection problem is not finite");
  }
  if (prob.to_target.minCoeff() < 0.0 || prob.pairwise.minCoeff() < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "distances must be nonnegative");
  }
  const double scale = std::max(1.0, prob.pairwise.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m; ++i) {
    if (prob.pairwise(i, i) != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "pairwise diagonal must be zero");
    }
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (std::abs(prob.pairwise(i, j) - prob.pairwise(j, i)) > 1e-12 * scale) {
        throw Error(ErrorCode::kInvalidArgument, "pairwise matrix is not symmetric");
      }
    }
  }
}

double dataset_distance_2q(const DatasetMap& a, const DatasetMap& b,
                           const LabelDistanceMatrix& m) {
  if (a.source_id != b.source_id || a.size() != b.size()) {
    throw Error(ErrorCode::kSourceMismatch,
                "maps start from '" + a.source_id + "' (" + std::to_string(a.size()) +
                    " rows) and '" + b.source_id + "' (" + std::to_string(b.size()) +
                    " rows)");
  }
  if (a.mapped_features.cols() != b.mapped_features.cols() ||
      m.rows() != a.num_classes() || m.cols() != b.num_classes()) {
    throw Error(ErrorCode::kShapeMismatch,
                "maps and label matrix shapes are inconsistent");
  }
  if (a.size() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "maps have no rows");
  }
  double total = 0.0;
  for (Eigen::Index z = 0; z < a.size(); ++z) {
    total += (a.mapped_features.row(z) - b.mapped_features.row(z)).squaredNorm();
    total += soft_label_cost(a.mapped_labels.row(z).transpose(),
                             b.mapped_labels.row(z).transpose(), m);
  }
  return total / static_cast<double>(a.size());
}

namespace {

double quadratic_value(const Eigen::VectorXd& a, const Eigen::VectorXd& d,
                       const Eigen::MatrixXd& pairwise) {
  double linear = a.dot(d);
  double cross = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if (i != j) cross += a[i] * a[j] * pairwise(i, j);
    }
  }
  return linear - 0.5 * cross;
}

}  // namespace

double surrogate(const SimplexWeights& a, const ProjectionProblem& prob) {
  if (a.size() != prob.size() || prob.pairwise.rows() != prob.size() ||
      prob.pairwise.cols() != prob.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(a.size()) + " weights for a problem of size " +
                    std::to_string(prob.size()));
  }
  return quadratic_value(a.values(), prob.to_target, prob.pairwise);
}

EuclideanGeodesicDistance euclidean_generalized_geodesic_distance(
    const Eigen::MatrixXd& base, std::span<const Eigen::MatrixXd> mapped,
    const SimplexWeights& a) {
  if (mapped.empty() || static_cast<std::size_t>(a.size()) != mapped.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(mapped.size()) + " maps with " +
                    std::to_string(a.size()) + " weights");
  }
  for (const auto& t : mapped) {
    if (t.rows() != base.rows() || t.cols() != base.cols()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "mapped samples must match the base sample array");
    }
  }
  const auto m = static_cast<Eigen::Index>(mapped.size());
  const double n = static_cast<double>(base.rows());

  Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(base.rows(), base.cols());
  for (Eigen::Index i = 0; i < m; ++i) combined += a[i] * mapped[static_cast<std::size_t>(i)];
  EuclideanGeodesicDistance out;
  out.direct = (base - combined).rowwise().squaredNorm().sum() / n;

  Eigen::VectorXd to_base(m);
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& ti = mapped[static_cast<std::size_t>(i)];
    to_base[i] = (base - ti).rowwise().squaredNorm().sum() / n;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      between(i, j) = (ti - mapped[static_cast<std::size_t>(j)]).rowwise().squaredNorm().sum() / n;
      between(j, i) = between(i, j);
    }
  }
  out.formula = quadratic_value(a.values(), to_base, between);
  return out;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const auto m = v.size();
  std::vector<double> sorted(v.data(), v.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    cumulative += sorted[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0).matrix();
}

namespace {

struct ScaledProblem {
  Eigen::VectorXd d;
  Eigen::MatrixXd pairwise;
};

ScaledProblem scaled(const ProjectionProblem& prob) {
  double s = std::max(prob.to_target.cwiseAbs().maxCoeff(),
                      prob.pairwise.cwiseAbs().maxCoeff());
  if (!(s > 0.0)) s = 1.0;
  return {prob.to_target / s, prob.pairwise / s};
}

double scaled_residual(const ScaledProblem& p, const Eigen::VectorXd& a) {
  const Eigen::VectorXd grad = p.d - p.pairwise * a;
  return (a - project_to_simplex(a - grad)).cwiseAbs().maxCoeff();
}

// Primal active-set method on the simplex. The Hessian of the surrogate is
// -pairwise and may be indefinite, in which case the method follows
// negative-curvature directions to the boundary and stops at a KKT point.
class ActiveSetSolver {
 public:
  explicit ActiveSetSolver(const ScaledProblem& p) : p_(p), m_(p.d.size()) {}

  struct Result {
    Eigen::VectorXd a;
    int iterations = 0;
  };

  Result run(Eigen::VectorXd a) const {
    std::vector<char> free(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) free[static_cast<std::size_t>(i)] = a[i] > 0.0;
    const int cap = 200 * static_cast<int>(m_) + 200;
    int it = 0;
    for (; it < cap; ++it) {
      const Eigen::VectorXd grad = p_.d - p_.pairwise * a;
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (free[static_cast<std::size_t>(i)]) idx.push_back(i);
      }
      const auto nf = static_cast<Eigen::Index>(idx.size());

      bool newton = true;
      Eigen::VectorXd step = Eigen::VectorXd::Zero(nf);
      if (nf > 1) step = face_step(idx, grad, newton);

      if (step.cwiseAbs().maxCoeff() <= kStepTolerance) {
        // Stationary on the face; release the most violated bound, if any.
        double lambda = 0.0;
        for (const auto i : idx) lambda += grad[i];
        lambda /= static_cast<double>(nf);
        Eigen::Index release = -1;
        double worst = -kMultiplierTolerance;
        for (Eigen::Index i = 0; i < m_; ++i) {
          if (free[static_cast<std::size_t>(i)]) continue;
          const double mult = grad[i] - lambda;
          if (mult < worst) {
            worst = mult;
            release = i;
          }
        }
        if (release < 0) break;
        free[static_cast<std::size_t>(release)] = 1;
        continue;
      }

      double max_step = std::numeric_limits<double>::infinity();
      Eigen::Index blocking = -1;
      for (Eigen::Index t = 0; t < nf; ++t) {
        if (step[t] < 0.0) {
          const double limit = -a[idx[static_cast<std::size_t>(t)]] / step[t];
          if (limit < max_step) {
            max_step = limit;
            blocking = idx[static_cast<std::size_t>(t)];
          }
        }
      }
      const double alpha = newton ? std::min(1.0, max_step) : max_step;
      for (Eigen::Index t = 0; t < nf; ++t) a[idx[static_cast<std::size_t>(t)]] += alpha * step[t];
      if (blocking >= 0 && alpha == max_step) {
        a[blocking] = 0.0;
        free[static_cast<std::size_t>(blocking)] = 0;
      }
      a = a.cwiseMax(0.0);
      a /= a.sum();
    }
    return {std::move(a), it};
  }

 private:
  static constexpr double kStepTolerance = 1e-14;
  static constexpr double kMultiplierTolerance = 1e-13;
  static constexpr double kCurvatureTolerance = 1e-11;

  // Step within the face {a_i, i in idx; sum = 1}. Newton step when the
  // reduced Hessian is positive definite; otherwise a descent direction of
  // nonpositive curvature that should be followed to the boundary.
  Eigen::VectorXd face_step(const std::vector<Eigen::Index>& idx,
                            const Eigen::VectorXd& grad, bool& newton) const {
    const auto nf = static_cast<Eigen::Index>(idx.size());
    const Eigen::MatrixXd hessian = -p_.pairwise(idx, idx);
    const Eigen::VectorXd g = grad(idx);

    // Orthonormal basis of the sum-zero subspace.
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(nf, 1));
    const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(nf, nf);
    const Eigen::MatrixXd z = full_q.rightCols(nf - 1);

    const Eigen::MatrixXd reduced = z.transpose() * hessian * z;
    const Eigen::VectorXd rg = z.transpose() * g;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (reduced + reduced.transpose()));
    const auto& lambda = eig.eigenvalues();
    const auto& vectors = eig.eigenvectors();

    if (lambda[0] > kCurvatureTolerance) {
      newton = true;
      const Eigen::VectorXd coeff =
          vectors * (vectors.transpose() * rg).cwiseQuotient(lambda);
      return -(z * coeff);
    }
    for (Eigen::Index t = 0; t < lambda.size(); ++t) {
      if (lambda[t] > kCurvatureTolerance) break;
      Eigen::VectorXd dir = z * vectors.col(t);
      const double slope = g.dot(dir);
      if (slope > 0.0) dir = -dir;
      if (lambda[t] < -kCurvatureTolerance || std::abs(slope) > kStepTolerance) {
        newton = false;
        return dir;
      }
    }
    // Flat directions carry no gradient: Newton step on the curved part.
    newton = true;
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(lambda.size());
    for (Eigen::Index t = 0; t < lambda.size(); ++t) {
      if (lambda[t] > kCurvatureTolerance) coeff[t] = vectors.col(t).dot(rg) / lambda[t];
    }
    return -(z * (vectors * coeff));
  }

  const ScaledProblem& p_;
  Eigen::Index m_;
};

}  // namespace

double kkt_residual(const ProjectionProblem& prob, const Eigen::VectorXd& a) {
  return scaled_residual(scaled(prob), a);
}

ProjectionSolution solve_projection_weights(const ProjectionProblem& prob) {
  validate(prob);
  const auto m = prob.size();
  const ScaledProblem p = scaled(prob);
  const ActiveSetSolver solver(p);

  ProjectionSolution best;
  bool found = false;
  double best_value = std::numeric_limits<double>::infinity();
  double worst_residual = 0.0;
  for (Eigen::Index start = 0; start <= m; ++start) {
    if (start == m && m == 1) break;
    const Eigen::VectorXd a0 = start < m ? SimplexWeights::vertex(m, start).values()
                                         : SimplexWeights::uniform(m).values();
    auto local = solver.run(a0);
    const double residual = scaled_residual(p, local.a);
    if (residual > kKktTolerance) {
      worst_residual = std::max(worst_residual, residual);
      continue;
    }
    const double value = quadratic_value(local.a, p.d, p.pairwise);
    if (!found || value < best_value - 1e-12) {
      found = true;
      best_value = value;
      best.a_hat = SimplexWeights::from(local.a);
      best.iterations = local.iterations;
      best.kkt_residual = residual;
      best.start = start;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kSolverFailure,
                "no start reached KKT residual " + std::to_string(kKktTolerance) +
                    " (best " + std::to_string(worst_residual) + ")");
  }
  best.objective = surrogate(best.a_hat, prob);
  return best;
}

std::vector<SimplexWeights> simplex_grid(Eigen::Index m, int resolution) {
  if (m < 1 || resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "simplex grid needs m >= 1 and resolution >= 1");
  }
  std::vector<SimplexWeights> out;
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  const double r = static_cast<double>(resolution);
  // Depth-first over compositions of `resolution` into m parts.
  std::function<void(Eigen::Index, int)> fill = [&](Eigen::Index pos, int remaining) {
    if (pos == m - 1) {
      counts[static_cast<std::size_t>(pos)] = remaining;
      Eigen::VectorXd a(m);
      for (Eigen::Index i = 0; i < m; ++i) a[i] = counts[static_cast<std::size_t>(i)] / r;
      a /= a.sum();
      out.push_back(SimplexWeights::from(std::move(a)));
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[static_cast<std::size_t>(pos)] = c;
      fill(pos + 1, remaining - c);
    }
  };
  fill(0, resolution);
  return out;
}

GeodesicHull build_geodesic_hull(const LabeledDataset& target,
                                 std::span<const LabeledDataset> sources,
                                 const ProjectionConfig& cfg) {
  if (sources.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no source datasets");
  }
  const auto m = sources.size();
  GeodesicHull hull;
  hull.maps.reserve(m);
  hull.to_target_labels.reserve(m);
  for (const auto& src : sources) {
    const auto target_to_src = label_distance_matrix(target, src, cfg.otdd.label);
    hull.maps.push_back(
        cfg.batch_size > 0
            ? batched_barycentric_map(target, src, target_to_src, cfg.batch_size,
                                      cfg.seed, cfg.otdd)
            : barycentric_map(target, src, target_to_src, cfg.otdd));
    hull.to_target_labels.push_back(target_to_src.transposed());
  }
  hull.pairwise_labels.assign(m, std::vector<LabelDistanceMatrix>(m));
  for (std::size_t i = 0; i < m; ++i) {
    hull.pairwise_labels[i][i] = label_distance_matrix(sources[i], cfg.otdd.label);
    for (std::size_t j = i + 1; j < m; ++j) {
      hull.pairwise_labels[i][j] =
          label_distance_matrix(sources[i], sources[j], cfg.otdd.label);
      hull.pairwise_labels[j][i] = hull.pairwise_labels[i][j].transposed();
    }
  }

  const auto mi = static_cast<Eigen::Index>(m);
  const auto base = identity_map(target);
  hull.problem.to_target.resize(mi);
  hull.problem.pairwise = Eigen::MatrixXd::Zero(mi, mi);
  for (std::size_t i = 0; i < m; ++i) {
    hull.problem.to_target[static_cast<Eigen::Index>(i)] =
        dataset_distance_2q(hull.maps[i], base, hull.to_target_labels[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v =
          dataset_distance_2q(hull.maps[i], hull.maps[j], hull.pairwise_labels[i][j]);
      hull.problem.pairwise(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      hull.problem.pairwise(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return hull;
}

double geodesic_point_distance(const LabeledDataset& target, const GeodesicHull& hull,
                               const SimplexWeights& a) {
  if (static_cast<std::size_t>(a.size()) != hull.maps.size()) {
    throw Error(ErrorCode::kShapeMismatch, "weights do not match the number of maps");
  }
  double total = 0.0;
  for (Eigen::Index z = 0; z < target.size(); ++z) {
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(target.dim());
    double label = 0.0;
    for (std::size_t i = 0; i < hull.maps.size(); ++i) {
      const double w = a[static_cast<Eigen::Index>(i)];
      x += w * hull.maps[i].mapped_features.row(z);
      if (w != 0.0) {
        label += w * soft_label_cost(hull.maps[i].mapped_labels.row(z).transpose(),
                                     target.labels.row(z).transpose(),
                                     hull.to_target_labels[i]);
      }
    }
    total += (target.features.row(z) - x).squaredNorm() + label;
  }
  return total / static_cast<double>(target.size());
}

}  // namespace otgeo
