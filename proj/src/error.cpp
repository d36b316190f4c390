// SPDX-License-Identifier: Apache-2.0
#include "sce/error.hpp"

namespace sce {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::NonBinaryColumn: return "NonBinaryColumn";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DegenerateArm: return "DegenerateArm";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AllSameResponse: return "AllSameResponse";
    case ErrorCode::ZeroCompliance: return "ZeroCompliance";
    case ErrorCode::EmptySubgroup: return "EmptySubgroup";
    case ErrorCode::WeakFirstStage: return "WeakFirstStage";
    case ErrorCode::AllStrataDegenerate: return "AllStrataDegenerate";
    case ErrorCode::ReferenceFailed: return "ReferenceFailed";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
    case ErrorCode::CannotSplit: return "CannotSplit";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::SingularT: return "SingularT";
    case ErrorCode::DegenerateNormalization: return "DegenerateNormalization";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::TooManyFailedReps: return "TooManyFailedReps";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

const char* error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn:
    case ErrorCode::ParseFailure:
      return "io";
    case ErrorCode::EmptyDataset:
    case ErrorCode::NonBinaryColumn:
    case ErrorCode::NonFiniteValue:
    case ErrorCode::DegenerateArm:
      return "data";
    case ErrorCode::RankDeficient:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::AllSameResponse:
    case ErrorCode::ZeroCompliance:
    case ErrorCode::EmptySubgroup:
    case ErrorCode::WeakFirstStage:
    case ErrorCode::AllStrataDegenerate:
    case ErrorCode::ReferenceFailed:
    case ErrorCode::TooManyFailures:
    case ErrorCode::CannotSplit:
    case ErrorCode::TooManyFailedReps:
      return "estimation";
    case ErrorCode::NumericalFailure:
    case ErrorCode::SingularT:
    case ErrorCode::DegenerateNormalization:
      return "numeric";
    case ErrorCode::InvalidAlpha:
    case ErrorCode::InvalidArgument:
      return "config";
  }
  return "error";
}

}  // namespace sce
