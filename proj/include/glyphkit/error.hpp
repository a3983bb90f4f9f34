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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace glyphkit {

enum class ErrorCode {
  // instruction parsing
  MalformedSyntax,
  SchemaViolation,
  OutOfRange,
  // layout / rendering
  RowsExceedWords,
  Unrenderable,
  MalformedFont,
  // OCR ingest and curation
  DegenerateQuad,
  MalformedRecord,
  InsufficientRecords,
  // benchmark construction
  MalformedEntry,
  BucketTooSmall,
  EmptyTemplateFile,
  // metrics
  EmptyGroundTruth,
  EmptyBucket,
  ZeroVector,
  DimensionMismatch,
  NotSymmetric,
  IndefiniteBeyondTolerance,
  TooFewSamples,
  // files
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Exception type used throughout the library. Parse-style failures carry the
/// offending box index and field name when they are known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<int> box_index = std::nullopt, std::string field = {});

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> box_index() const noexcept { return box_index_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::optional<int> box_index_;
  std::string field_;
};

}  // namespace glyphkit
