// Copyright 2026 The glyphkit Authors
//
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

#include "glyphkit/error.hpp"

#include <utility>

namespace glyphkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedSyntax: return "MalformedSyntax";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::RowsExceedWords: return "RowsExceedWords";
    case ErrorCode::Unrenderable: return "Unrenderable";
    case ErrorCode::MalformedFont: return "MalformedFont";
    case ErrorCode::DegenerateQuad: return "DegenerateQuad";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::InsufficientRecords: return "InsufficientRecords";
    case ErrorCode::MalformedEntry: return "MalformedEntry";
    case ErrorCode::BucketTooSmall: return "BucketTooSmall";
    case ErrorCode::EmptyTemplateFile: return "EmptyTemplateFile";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::EmptyBucket: return "EmptyBucket";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IndefiniteBeyondTolerance: return "IndefiniteBeyondTolerance";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<int> box_index, std::string field)
    : std::runtime_error(message),
      code_(code),
      box_index_(box_index),
      field_(std::move(field)) {}

}  // namespace glyphkit
