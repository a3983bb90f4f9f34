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

#include "glyphkit/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "glyphkit/error.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string s = utf8::decode(a);
  const std::u32string t = utf8::decode(b);
  if (s.empty()) return t.size();
  if (t.empty()) return s.size();
  std::vector<std::size_t> prev(t.size() + 1);
  std::vector<std::size_t> cur(t.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= s.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[t.size()];
}

WordAlignment align_words(std::span<const std::string> gt, std::span<const std::string> pred,
                          bool case_sensitive) {
  std::vector<std::string> g(gt.begin(), gt.end());
  std::vector<std::string> p(pred.begin(), pred.end());
  if (!case_sensitive) {
    for (auto& w : g) w = utf8::fold_case(w);
    for (auto& w : p) w = utf8::fold_case(w);
  }
  const std::size_t n = g.size();
  const std::size_t m = p.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + (g[i - 1] == p[j - 1] ? 0 : 1), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});
    }
  }

  WordAlignment out;
  out.distance = d[n][m];
  out.gt_to_pred.assign(n, std::nullopt);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (g[i - 1] == p[j - 1] ? 0 : 1)) {
      out.gt_to_pred[i - 1] = j - 1;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      --i;
    } else {
      --j;
    }
  }
  return out;
}

double word_error_rate(std::span<const std::string> gt, std::span<const std::string> pred,
                       bool case_sensitive) {
  if (gt.empty()) throw Error(ErrorCode::EmptyGroundTruth, "ground truth has no words");
  return static_cast<double>(align_words(gt, pred, case_sensitive).distance) /
         static_cast<double>(gt.size());
}

std::vector<std::string> reading_order(std::span<const OcrWord> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Rect> bounds;
  bounds.reserve(boxes.size());
  for (const OcrWord& b : boxes) bounds.push_back(bounding_rect(b.quad));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bounds[a].y != bounds[b].y) return bounds[a].y < bounds[b].y;
    return bounds[a].x < bounds[b].x;
  });
  std::vector<std::string> words;
  for (std::size_t idx : order) {
    for (std::string& w : utf8::split_words(boxes[idx].text)) words.push_back(std::move(w));
  }
  return words;
}

CaseResult evaluate_case(std::span<const std::string> gt_words,
                         std::span<const std::string> ocr_words) {
  if (gt_words.empty()) throw Error(ErrorCode::EmptyGroundTruth, "ground truth has no words");
  CaseResult r;
  const WordAlignment strict = align_words(gt_words, ocr_words, true);
  const WordAlignment relaxed = align_words(gt_words, ocr_words, false);
  const double n = static_cast<double>(gt_words.size());
  r.exact = strict.distance == 0;
  r.exact_ci = relaxed.distance == 0;
  r.one_minus_wer = 1.0 - static_cast<double>(strict.distance) / n;

  double total = 0.0;
  for (std::size_t i = 0; i < gt_words.size(); ++i) {
    const auto& aligned = strict.gt_to_pred[i];
    if (aligned) {
      total += static_cast<double>(levenshtein(gt_words[i], ocr_words[*aligned]));
      r.matched.emplace_back(gt_words[i], ocr_words[*aligned]);
    } else {
      total += static_cast<double>(utf8::length(gt_words[i]));
      r.matched.emplace_back(gt_words[i], std::nullopt);
    }
  }
  r.ld = total / n;

  const std::set<std::string> predicted(ocr_words.begin(), ocr_words.end());
  r.contains = std::all_of(gt_words.begin(), gt_words.end(),
                           [&](const std::string& w) { return predicted.count(w) > 0; });
  return r;
}

EvalReport aggregate(const std::map<std::string, std::vector<CaseResult>>& by_bucket) {
  EvalReport report;
  for (const auto& [name, results] : by_bucket) {
    if (results.empty()) throw Error(ErrorCode::EmptyBucket, "bucket " + name + " has no cases");
    BucketMetrics m;
    m.cases = results.size();
    for (const CaseResult& r : results) {
      m.acc += r.exact ? 1.0 : 0.0;
      m.acc_ci += r.exact_ci ? 1.0 : 0.0;
      m.ld += r.ld;
      m.one_minus_wer += r.one_minus_wer;
      m.contains += r.contains ? 1.0 : 0.0;
    }
    const double k = static_cast<double>(m.cases);
    m.acc /= k;
    m.acc_ci /= k;
    m.ld /= k;
    m.one_minus_wer /= k;
    m.contains /= k;
    report.buckets.emplace(name, m);
  }
  if (!report.buckets.empty()) {
    BucketMetrics& o = report.overall;
    for (const auto& [name, m] : report.buckets) {
      o.cases += m.cases;
      o.acc += m.acc;
      o.acc_ci += m.acc_ci;
      o.ld += m.ld;
      o.one_minus_wer += m.one_minus_wer;
      o.contains += m.contains;
    }
    const double b = static_cast<double>(report.buckets.size());
    o.acc /= b;
    o.acc_ci /= b;
    o.ld /= b;
    o.one_minus_wer /= b;
    o.contains /= b;
  }
  return report;
}

nlohmann::json to_json(const BucketMetrics& m) {
  return {{"cases", m.cases},
          {"acc", m.acc},
          {"acc_ci", m.acc_ci},
          {"ld", m.ld},
          {"one_minus_wer", m.one_minus_wer},
          {"contains_rate", m.contains}};
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json buckets = nlohmann::json::object();
  for (const auto& [name, m] : report.buckets) buckets[name] = to_json(m);
  nlohmann::json out = {{"overall", to_json(report.overall)},
                        {"buckets", buckets},
                        {"missing_predictions", report.missing_predictions},
                        {"clip_score", report.clip_score ? nlohmann::json(*report.clip_score) : nlohmann::json(nullptr)},
                        {"fid", report.fid ? nlohmann::json(*report.fid) : nlohmann::json(nullptr)}};
  out["metadata"] = {{"overall_mean", "unweighted mean of bucket means"},
                     {"clip_score_formula", "100 * cosine, unclamped"},
                     {"covariance", "unbiased (n-1)"}};
  return out;
}

}  // namespace glyphkit
