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

// Synthetic inputs shared by unit and acceptance tests.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "glyphkit/bench.hpp"
#include "glyphkit/random.hpp"

namespace fixture {

inline nlohmann::json quad_json(double x0, double y0, double x1, double y1) {
  return nlohmann::json::array({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

inline nlohmann::json box_json(double x0, double y0, double x1, double y1,
                               const std::string& text = "text") {
  return {{"quad", quad_json(x0, y0, x1, y1)}, {"text", text}, {"conf", 0.95}};
}

inline std::string record_line(const std::string& id, double aesthetic,
                               const nlohmann::json& boxes, int w = 512, int h = 512) {
  return nlohmann::json{{"image_id", id},
                        {"width", w},
                        {"height", h},
                        {"caption", "a photo of " + id},
                        {"aesthetic", aesthetic},
                        {"boxes", boxes}}
      .dump();
}

/// A compliant record: one centered 200x64 box (about 4.9% of 512x512 is
/// too small, so the box is 224x64 = 5.5%).
inline std::string kept_line(const std::string& id) {
  return record_line(id, 5.2, nlohmann::json::array({box_json(144, 224, 368, 288, "Open Late")}));
}

/// Four records, each tripping exactly one rule at default thresholds.
inline std::vector<std::string> four_rule_records() {
  using nlohmann::json;
  json six = json::array();
  for (int k = 0; k < 6; ++k) six.push_back(box_json(100, 60 + 60 * k, 400, 100 + 60 * k, "w"));
  return {
      // aesthetic 4.4 < 4.5
      record_line("low_aesthetic", 4.4, json::array({box_json(144, 224, 368, 288)})),
      // only box touches the top edge
      record_line("border_only", 5.0, json::array({box_json(100, 0, 400, 80)})),
      // 100x80 box = 3.05% of the image
      record_line("small_area", 5.0, json::array({box_json(200, 200, 300, 280)})),
      // six boxes, 6 * 300x40 = 27% of the image
      record_line("too_many_boxes", 5.0, six),
  };
}

/// Seeded synthetic stream mixing kept, rejected and malformed records.
inline std::vector<std::string> synthetic_stream(std::size_t n, std::uint64_t seed) {
  using nlohmann::json;
  glyphkit::Rng rng(seed);
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "rec" + std::to_string(i);
    if (rng.below(40) == 0) {
      lines.push_back("{\"image_id\": \"broken" + std::to_string(i));
      continue;
    }
    const int nboxes = static_cast<int>(rng.below(8));
    json boxes = json::array();
    for (int k = 0; k < nboxes; ++k) {
      const double x0 = 512.0 * rng.unit() * 0.8;
      const double y0 = 512.0 * rng.unit() * 0.8;
      const double w = 10.0 + 150.0 * rng.unit();
      const double h = 10.0 + 60.0 * rng.unit();
      std::string text = "w" + std::to_string(rng.below(100));
      if (rng.below(2)) text += " x" + std::to_string(rng.below(10));
      boxes.push_back(box_json(x0, y0, std::min(512.0, x0 + w), std::min(512.0, y0 + h), text));
    }
    lines.push_back(record_line(id, 3.5 + 3.0 * rng.unit(), boxes));
  }
  return lines;
}

/// Frequency list with enough words in every bucket: 1000 top words and
/// 400 in each of the other three bands.
inline std::vector<glyphkit::WordRank> frequency_list(std::uint64_t seed = 1) {
  glyphkit::Rng rng(seed);
  std::vector<glyphkit::WordRank> out;
  std::vector<std::int64_t> ranks;
  for (std::int64_t r = 1; r <= 1000; ++r) ranks.push_back(r);
  for (std::int64_t r = 0; r < 400; ++r) ranks.push_back(1001 + r * 22);
  for (std::int64_t r = 0; r < 400; ++r) ranks.push_back(10001 + r * 224);
  for (std::int64_t r = 0; r < 400; ++r) ranks.push_back(100001 + r * 997);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    // Unique by construction: a letter prefix followed by the index in base 26.
    std::string w(1, static_cast<char>('a' + rng.below(26)));
    std::size_t v = i;
    do {
      w += static_cast<char>('a' + v % 26);
      v /= 26;
    } while (v);
    w += static_cast<char>('a' + rng.below(26));
    // Capitalize some words so case handling is exercised.
    if (rng.below(5) == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    out.push_back({w, ranks[i]});
  }
  return out;
}

inline std::string frequency_tsv(const std::vector<glyphkit::WordRank>& list) {
  std::string s;
  for (const auto& wr : list) s += wr.word + "\t" + std::to_string(wr.rank) + "\n";
  return s;
}

}  // namespace fixture
