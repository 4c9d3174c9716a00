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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "otgeo/dataset.hpp"
#include "otgeo/label_geometry.hpp"
#include "otgeo/otdd.hpp"
#include "otgeo/transport_map.hpp"

namespace otgeo {

// Coefficients of the quadratic surrogate
//   f(a) = sum_i a_i d_i - 1/2 sum_{i != j} a_i a_j D_ij
// where d_i is the (2,Q) distance from source i to the target and D the
// pairwise (2,Q) distances between sources.
struct ProjectionProblem {
  Eigen::VectorXd to_target;
  Eigen::MatrixXd pairwise;

  Eigen::Index size() const { return to_target.size(); }
};

// Throws kShapeMismatch or kInvalidArgument (negative entries, asymmetric or
// nonzero diagonal pairwise matrix).
void validate(const ProjectionProblem& prob);

struct ProjectionSolution {
  SimplexWeights a_hat = SimplexWeights::uniform(1);
  double objective = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;
  // Which start produced a_hat: 0..m-1 are the vertices, m the barycenter.
  Eigen::Index start = 0;
};

// Mean over the shared source samples of the squared feature gap plus the
// bilinear label cost y_a^T M y_b. `m` is C_a x C_b.
double dataset_distance_2q(const DatasetMap& a, const DatasetMap& b,
                           const LabelDistanceMatrix& m);

double surrogate(const SimplexWeights& a, const ProjectionProblem& prob);

// Both sides of the closed form for the squared (2, nu) distance from nu to
// the generalized geodesic point, for maps given as matched sample arrays.
struct EuclideanGeodesicDistance {
  double direct = 0.0;
  double formula = 0.0;
};

EuclideanGeodesicDistance euclidean_generalized_geodesic_distance(
    const Eigen::MatrixXd& base, std::span<const Eigen::MatrixXd> mapped,
    const SimplexWeights& a);

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

// || a - proj(a - grad f(a)) ||_inf on the problem rescaled so its largest
// coefficient has magnitude 1. Zero exactly at KKT points.
double kkt_residual(const ProjectionProblem& prob, const Eigen::VectorXd& a);

inline constexpr double kKktTolerance = 1e-8;

// Minimizes the surrogate over the simplex with a primal active-set method
// started from every vertex and the barycenter; the best objective wins,
// earlier starts win ties. Throws kSolverFailure when no start reaches
// kKktTolerance.
ProjectionSolution solve_projection_weights(const ProjectionProblem& prob);

// All points with coordinates k / resolution, in lexicographically
// decreasing order of the coordinates.
std::vector<SimplexWeights> simplex_grid(Eigen::Index m, int resolution);

struct ProjectionConfig {
  OtddConfig otdd;
  Eigen::Index batch_size = 0;  // 0 maps with a single coupling
  std::uint64_t seed = 0;
};

// Maps from the target to every source with the label matrices they need,
// and the projection problem they define.
struct GeodesicHull {
  std::vector<DatasetMap> maps;
  std::vector<LabelDistanceMatrix> to_target_labels;             // C_i x C_Q
  std::vector<std::vector<LabelDistanceMatrix>> pairwise_labels;  // C_i x C_j
  ProjectionProblem problem;
};

GeodesicHull build_geodesic_hull(const LabeledDataset& target,
                                 std::span<const LabeledDataset> sources,
                                 const ProjectionConfig& cfg);

// Direct evaluation of the (2,Q) distance between the target and the
// geodesic point at a, pairing each target sample with its combined image.
double geodesic_point_distance(const LabeledDataset& target, const GeodesicHull& hull,
                               const SimplexWeights& a);

}  // namespace otgeo
