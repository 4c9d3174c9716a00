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

#include "otgeo/error.hpp"

namespace otgeo {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonStochasticLabel: return "NonStochasticLabel";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kSoftLabels: return "SoftLabels";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSourceMismatch: return "SourceMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBadWeights: return "BadWeights";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kProblemTooLarge: return "ProblemTooLarge";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::kDegenerateRow: return "DegenerateRow";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kBadSpec: return "BadSpec";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kProblemTooLarge:
    case ErrorCode::kNoConvergence:
    case ErrorCode::kNumericalUnderflow:
    case ErrorCode::kDegenerateRow:
    case ErrorCode::kSolverFailure:
      return ErrorCategory::kSolver;
    case ErrorCode::kIoError:
      return ErrorCategory::kIo;
    default:
      return ErrorCategory::kValidation;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace otgeo
