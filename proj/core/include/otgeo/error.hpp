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

#include <stdexcept>
#include <string>
#include <string_view>

namespace otgeo {

enum class ErrorCode {
  kShapeMismatch,
  kNonStochasticLabel,
  kNonFiniteValue,
  kEmptyClass,
  kSoftLabels,
  kIndexOutOfRange,
  kDimensionMismatch,
  kSourceMismatch,
  kOutOfRange,
  kBadWeights,
  kNotPSD,
  kKTooLarge,
  kInvalidArgument,
  kProblemTooLarge,
  kNoConvergence,
  kNumericalUnderflow,
  kDegenerateRow,
  kSolverFailure,
  kBadSpec,
  kIoError,
};

// Broad classes of failure; the CLI maps these onto exit codes.
enum class ErrorCategory { kValidation, kSolver, kIo };

std::string_view error_code_name(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace otgeo
