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

// Scoring a benchmark run: joins the case list with external OCR predictions
// (and optional embedding files) and folds everything into an EvalReport.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/embedding.hpp"
#include "glyphkit/metrics.hpp"

namespace glyphkit {

struct EvalCase {
  std::string case_id;
  std::string bucket;
  std::vector<std::string> gt_words;
};

/// Reads one case object. Ground truth is the `word` field when present,
/// otherwise the box texts of `instructions` in order. Throws MalformedEntry.
EvalCase eval_case_from_json(const nlohmann::json& j);

/// JSONL of case objects (as written by emit_bench); blank lines skipped.
/// Throws MalformedEntry naming the line.
std::vector<EvalCase> parse_cases(std::string_view jsonl);

/// JSONL of `{"case_id": ..., "words": [{"text", "quad", "conf"}]}`. A later
/// line for the same case replaces an earlier one. Throws MalformedEntry.
std::map<std::string, std::vector<OcrWord>> parse_predictions(std::string_view jsonl);
std::map<std::string, std::vector<OcrWord>> predictions_from_json(const nlohmann::json& array);

struct EvalInputs {
  std::vector<EvalCase> cases;
  std::map<std::string, std::vector<OcrWord>> predictions;
  std::optional<EmbeddingSet> image_embeddings;  // CLIP, row i <-> case i
  std::optional<EmbeddingSet> text_embeddings;
  std::optional<EmbeddingSet> real_features;  // FID
  std::optional<EmbeddingSet> gen_features;
};

struct EvalOutcome {
  std::vector<CaseResult> results;  // in case order
  EvalReport report;
};

/// Cases run in parallel; the fold is over buckets in name order and cases
/// in input order, so the result does not depend on `threads`. A case
/// without predictions is scored against empty OCR output and counted in
/// missing_predictions. CLIP rows must match the case count
/// (DimensionMismatch).
EvalOutcome evaluate_run(const EvalInputs& inputs, int threads = 1);

/// Serial loop over the same per-case function, kept for cross-checking.
EvalOutcome evaluate_run_reference(const EvalInputs& inputs);

nlohmann::json to_json(const CaseResult& r);

}  // namespace glyphkit
