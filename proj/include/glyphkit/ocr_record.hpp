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

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/geometry.hpp"

namespace glyphkit {

struct OcrBox {
  Quad quad{};
  std::string text;
  double conf = 1.0;
};

/// One image's OCR result as produced by an external detector/recognizer.
struct OcrRecord {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::string caption;
  double aesthetic = 0.0;
  std::vector<OcrBox> boxes;
};

/// Parses one JSONL line. Quads are clamped into the image; throws
/// Error(MalformedRecord) for syntax, schema, or range problems.
OcrRecord parse_ocr_record(std::string_view line);
OcrRecord ocr_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OcrRecord& record);

/// Reads a quad given as an array of four [x, y] pairs.
Quad quad_from_json(const nlohmann::json& j);
nlohmann::json quad_to_json(const Quad& quad);

}  // namespace glyphkit
