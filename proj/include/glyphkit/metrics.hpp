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

// OCR-based text accuracy metrics.
//
//   Acc  - fraction of cases whose recognized word sequence equals the
//          ground truth exactly (word error rate of zero).
//   Acc^ - the same with case-insensitive word equality.
//   LD   - mean character Levenshtein distance per ground-truth word against
//          the word it aligns to; an unmatched word costs its own length.
//
// Bucket scores are plain means over cases; the overall score is the
// unweighted mean of the bucket scores.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/geometry.hpp"

namespace glyphkit {

/// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

struct WordAlignment {
  std::size_t distance = 0;
  /// For each ground-truth word, the index of the aligned prediction or
  /// nullopt when it was deleted.
  std::vector<std::optional<std::size_t>> gt_to_pred;
};

/// Word-level edit distance with a deterministic backtrace (substitution or
/// match preferred, then deletion, then insertion).
WordAlignment align_words(std::span<const std::string> gt, std::span<const std::string> pred,
                          bool case_sensitive);

/// Word edit distance divided by |gt|. Throws EmptyGroundTruth.
double word_error_rate(std::span<const std::string> gt, std::span<const std::string> pred,
                       bool case_sensitive);

struct OcrWord {
  std::string text;
  Quad quad{};
  double conf = 1.0;
};

/// Reading order: boxes sorted by the top, then the left, of their bounding
/// rectangles (stable); each box's text is split on whitespace.
std::vector<std::string> reading_order(std::span<const OcrWord> boxes);

struct CaseResult {
  std::string case_id;
  bool exact = false;
  bool exact_ci = false;
  double ld = 0.0;
  double one_minus_wer = 0.0;  // continuous, case-sensitive; may go negative
  bool contains = false;       // every gt word occurs among the predictions
  std::vector<std::pair<std::string, std::optional<std::string>>> matched;
};

/// Throws EmptyGroundTruth.
CaseResult evaluate_case(std::span<const std::string> gt_words,
                         std::span<const std::string> ocr_words);

struct BucketMetrics {
  std::size_t cases = 0;
  double acc = 0.0;
  double acc_ci = 0.0;
  double ld = 0.0;
  double one_minus_wer = 0.0;
  double contains = 0.0;
};

struct EvalReport {
  std::map<std::string, BucketMetrics> buckets;
  BucketMetrics overall;  // unweighted mean of bucket means; cases = total
  std::optional<double> clip_score;
  std::optional<double> fid;
  std::size_t missing_predictions = 0;
};

/// Throws EmptyBucket for a bucket with no results.
EvalReport aggregate(const std::map<std::string, std::vector<CaseResult>>& by_bucket);

nlohmann::json to_json(const BucketMetrics& m);
nlohmann::json to_json(const EvalReport& report);

}  // namespace glyphkit
