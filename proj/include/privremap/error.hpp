// Copyright 2026 The privremap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVREMAP_ERROR_HPP_
#define PRIVREMAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace privremap {

enum class ErrorCode {
  kNegativeVariance,
  kNonFiniteParameter,
  kProbabilityOutOfRange,
  kDegenerateModel,
  kSingularObservation,
  kMalformedHeader,
  kNonMonotoneTimestamps,
  kRaggedRow,
  kNonNumericField,
  kInsufficientData,
  kDimensionMismatch,
  kInvalidArgument,
  kIoError,
  kUsageError,
};

// Stable machine-parsable name, e.g. "negative_variance". The CLI prints
// errors as "<code_name>: <message>" on stderr.
inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeVariance:
      return "negative_variance";
    case ErrorCode::kNonFiniteParameter:
      return "non_finite_parameter";
    case ErrorCode::kProbabilityOutOfRange:
      return "probability_out_of_range";
    case ErrorCode::kDegenerateModel:
      return "degenerate_model";
    case ErrorCode::kSingularObservation:
      return "singular_observation";
    case ErrorCode::kMalformedHeader:
      return "malformed_header";
    case ErrorCode::kNonMonotoneTimestamps:
      return "non_monotone_timestamps";
    case ErrorCode::kRaggedRow:
      return "ragged_row";
    case ErrorCode::kNonNumericField:
      return "non_numeric_field";
    case ErrorCode::kInsufficientData:
      return "insufficient_data";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kIoError:
      return "io_error";
    case ErrorCode::kUsageError:
      return "usage_error";
  }
  return "unknown_error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return ErrorCodeName(code_); }

 private:
  ErrorCode code_;
};

}  // namespace privremap

#endif  // PRIVREMAP_ERROR_HPP_
