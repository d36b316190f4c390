// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace sce {

enum class ErrorCode {
  // data
  EmptyDataset,
  NonBinaryColumn,
  NonFiniteValue,
  DegenerateArm,
  MissingColumn,
  ParseFailure,
  // regression
  RankDeficient,
  DimensionMismatch,
  AllSameResponse,
  // estimators
  ZeroCompliance,
  EmptySubgroup,
  WeakFirstStage,
  AllStrataDegenerate,
  ReferenceFailed,
  // resampling
  TooManyFailures,
  CannotSplit,
  // synthesis / inference
  NumericalFailure,
  SingularT,
  DegenerateNormalization,
  InvalidAlpha,
  // simulation / config
  TooManyFailedReps,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Error category used for CLI exit codes: io, data, estimation, numeric, config.
const char* error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sce
