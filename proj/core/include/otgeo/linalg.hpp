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

#include <Eigen/Dense>

namespace otgeo::linalg {

// Eigenvalues of the symmetrized matrix below -tolerance raise kNotPSD.
inline constexpr double kPsdTolerance = 1e-6;

// Symmetric square root through a self-adjoint eigendecomposition, with
// eigenvalues clamped at zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a,
                         double tolerance = kPsdTolerance);

// Throws kNotPSD if `a` is not square or has an eigenvalue below -tolerance.
void check_psd(const Eigen::MatrixXd& a, double tolerance = kPsdTolerance);

// Pairwise squared Euclidean distances between the rows of a and b,
// evaluated as sums of squared differences (no Gram expansion).
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b);

}  // namespace otgeo::linalg
