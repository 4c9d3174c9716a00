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
#include "otgeo/linalg.hpp"

#include <string>

#include "otgeo/error.hpp"

namespace otgeo::linalg {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> symmetric_eigen(
    const Eigen::MatrixXd& a, double tolerance) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kNotPSD, "matrix is not square");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, "matrix has non-finite entries");
  }
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPSD, "eigendecomposition failed");
  }
  if (sym.rows() > 0 && eig.eigenvalues().minCoeff() < -tolerance) {
    throw Error(ErrorCode::kNotPSD,
                "eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) +
                    " below -" + std::to_string(tolerance));
  }
  return eig;
}

}  // namespace

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a, double tolerance) {
  const auto eig = symmetric_eigen(a, tolerance);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

void check_psd(const Eigen::MatrixXd& a, double tolerance) {
  (void)symmetric_eigen(a, tolerance);
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature dimensions " + std::to_string(a.cols()) + " and " +
                    std::to_string(b.cols()) + " differ");
  }
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out(i, j) = (a.row(i) - b.row(j)).squaredNorm();
    }
  }
  return out;
}

}  // namespace otgeo::linalg
