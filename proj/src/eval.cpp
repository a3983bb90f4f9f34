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

#include "glyphkit/eval.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glyphkit/error.hpp"
#include "glyphkit/ocr_record.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedEntry, what);
}

template <typename F>
void for_each_line(std::string_view text, std::string_view what, F&& f) {
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      malformed(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      f(j);
    } catch (const Error& e) {
      malformed(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<OcrWord> words_from_json(const json& words) {
  if (!words.is_array()) malformed("words must be an array");
  std::vector<OcrWord> out;
  for (const json& w : words) {
    if (!w.is_object() || !w.contains("text") || !w["text"].is_string()) {
      malformed("each word needs a string text");
    }
    OcrWord word;
    word.text = w["text"].get<std::string>();
    if (w.contains("quad")) {
      try {
        word.quad = quad_from_json(w["quad"]);
      } catch (const Error& e) {
        malformed(std::string("bad quad: ") + e.what());
      }
    }
    if (w.contains("conf")) {
      if (!w["conf"].is_number()) malformed("conf must be a number");
      word.conf = w["conf"].get<double>();
    }
    out.push_back(std::move(word));
  }
  return out;
}

struct Scored {
  std::vector<CaseResult> results;
  std::size_t missing = 0;
};

CaseResult score_one(const EvalInputs& in, std::size_t i, bool& missing) {
  const EvalCase& c = in.cases[i];
  const auto hit = in.predictions.find(c.case_id);
  missing = hit == in.predictions.end();
  std::vector<std::string> ocr;
  if (!missing) ocr = reading_order(hit->second);
  try {
    CaseResult r = evaluate_case(c.gt_words, ocr);
    r.case_id = c.case_id;
    return r;
  } catch (const Error& e) {
    throw Error(e.code(), "case " + c.case_id + ": " + e.what());
  }
}

EvalReport finish(const EvalInputs& in, const std::vector<CaseResult>& results,
                  std::size_t missing, int threads) {
  std::map<std::string, std::vector<CaseResult>> by_bucket;
  for (std::size_t i = 0; i < results.size(); ++i) {
    by_bucket[in.cases[i].bucket].push_back(results[i]);
  }
  EvalReport report = aggregate(by_bucket);
  report.missing_predictions = missing;
  if (in.image_embeddings.has_value() != in.text_embeddings.has_value()) {
    throw Error(ErrorCode::DimensionMismatch, "CLIP score needs both image and text embeddings");
  }
  if (in.image_embeddings) {
    if (in.image_embeddings->count != in.cases.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "image embeddings have " + std::to_string(in.image_embeddings->count) +
                      " rows for " + std::to_string(in.cases.size()) + " cases");
    }
    report.clip_score = clip_score(*in.image_embeddings, *in.text_embeddings).mean;
  }
  if (in.real_features.has_value() != in.gen_features.has_value()) {
    throw Error(ErrorCode::DimensionMismatch, "FID needs both real and generated features");
  }
  if (in.real_features) {
    report.fid = fid(*in.real_features, *in.gen_features, {threads, CovarianceBackend::Blocked});
  }
  return report;
}

}  // namespace

EvalCase eval_case_from_json(const json& j) {
  if (!j.is_object()) malformed("case must be an object");
  EvalCase c;
  if (!j.contains("case_id") || !j["case_id"].is_string()) malformed("case_id must be a string");
  c.case_id = j["case_id"].get<std::string>();
  if (!j.contains("bucket") || !j["bucket"].is_string()) {
    malformed("case " + c.case_id + ": bucket must be a string");
  }
  c.bucket = j["bucket"].get<std::string>();
  if (j.contains("word")) {
    if (!j["word"].is_string()) malformed("case " + c.case_id + ": word must be a string");
    c.gt_words = utf8::split_words(j["word"].get<std::string>());
  } else if (j.contains("instructions") && j["instructions"].is_object() &&
             j["instructions"].contains("boxes") && j["instructions"]["boxes"].is_array()) {
    for (const json& b : j["instructions"]["boxes"]) {
      if (!b.is_object() || !b.contains("text") || !b["text"].is_string()) {
        malformed("case " + c.case_id + ": box without text");
      }
      for (std::string& w : utf8::split_words(b["text"].get<std::string>())) {
        c.gt_words.push_back(std::move(w));
      }
    }
  } else {
    malformed("case " + c.case_id + ": needs word or instructions");
  }
  if (c.gt_words.empty()) malformed("case " + c.case_id + ": ground truth has no words");
  return c;
}

std::vector<EvalCase> parse_cases(std::string_view jsonl) {
  std::vector<EvalCase> out;
  for_each_line(jsonl, "cases", [&](const json& j) { out.push_back(eval_case_from_json(j)); });
  return out;
}

std::map<std::string, std::vector<OcrWord>> predictions_from_json(const json& array) {
  if (!array.is_array()) malformed("predictions must be an array");
  std::map<std::string, std::vector<OcrWord>> out;
  for (const json& j : array) {
    if (!j.is_object() || !j.contains("case_id") || !j["case_id"].is_string()) {
      malformed("prediction needs a string case_id");
    }
    if (!j.contains("words")) malformed("prediction needs words");
    out[j["case_id"].get<std::string>()] = words_from_json(j["words"]);
  }
  return out;
}

std::map<std::string, std::vector<OcrWord>> parse_predictions(std::string_view jsonl) {
  std::map<std::string, std::vector<OcrWord>> out;
  for_each_line(jsonl, "predictions", [&](const json& j) {
    for (auto& [id, words] : predictions_from_json(json::array({j}))) out[id] = std::move(words);
  });
  return out;
}

EvalOutcome evaluate_run(const EvalInputs& inputs, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(inputs.cases.size());
  std::vector<CaseResult> results(inputs.cases.size());
  std::vector<char> missing(inputs.cases.size(), 0);
  std::exception_ptr failure;
#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      bool miss = false;
      results[static_cast<std::size_t>(i)] = score_one(inputs, static_cast<std::size_t>(i), miss);
      missing[static_cast<std::size_t>(i)] = miss ? 1 : 0;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(glyphkit_eval_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::size_t missing_total = 0;
  for (char m : missing) missing_total += static_cast<std::size_t>(m);
  EvalOutcome out;
  out.report = finish(inputs, results, missing_total, threads);
  out.results = std::move(results);
  return out;
}

EvalOutcome evaluate_run_reference(const EvalInputs& inputs) {
  EvalOutcome out;
  std::size_t missing_total = 0;
  for (std::size_t i = 0; i < inputs.cases.size(); ++i) {
    bool miss = false;
    out.results.push_back(score_one(inputs, i, miss));
    missing_total += miss ? 1 : 0;
  }
  out.report = finish(inputs, out.results, missing_total, 1);
  return out;
}

json to_json(const CaseResult& r) {
  json matched = json::array();
  for (const auto& [gt, pred] : r.matched) {
    matched.push_back({{"gt", gt}, {"pred", pred ? json(*pred) : json(nullptr)}});
  }
  return {{"case_id", r.case_id},
          {"exact", r.exact},
          {"exact_ci", r.exact_ci},
          {"ld", r.ld},
          {"one_minus_wer", r.one_minus_wer},
          {"contains_word", r.contains},
          {"matched", matched}};
}

}  // namespace glyphkit
