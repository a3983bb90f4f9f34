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

#include "glyphkit/ocr_record.hpp"

#include <algorithm>
#include <cmath>

#include "glyphkit/error.hpp"

namespace glyphkit {

namespace {

[[noreturn]] void bad_record(const std::string& what) {
  throw Error(ErrorCode::MalformedRecord, "malformed OCR record: " + what);
}

const nlohmann::json& field(const nlohmann::json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) bad_record(std::string("missing field '") + name + "'");
  return *it;
}

double number(const nlohmann::json& v, const char* name) {
  if (!v.is_number()) bad_record(std::string("field '") + name + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_record(std::string("field '") + name + "' is not finite");
  return d;
}

}  // namespace

Quad quad_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) bad_record("quad must be an array of four [x,y] pairs");
  Quad q{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = j[i];
    if (!p.is_array() || p.size() != 2) bad_record("quad point must be an [x,y] pair");
    q[i] = {number(p[0], "quad"), number(p[1], "quad")};
  }
  return q;
}

nlohmann::json quad_to_json(const Quad& quad) {
  nlohmann::json out = nlohmann::json::array();
  for (const Point& p : quad) out.push_back({p.x, p.y});
  return out;
}

OcrRecord ocr_record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad_record("record must be a JSON object");
  OcrRecord rec;
  const auto& id = field(j, "image_id");
  if (!id.is_string()) bad_record("image_id must be a string");
  rec.image_id = id.get<std::string>();

  const auto& w = field(j, "width");
  const auto& h = field(j, "height");
  if (!w.is_number_integer() || !h.is_number_integer()) bad_record("width/height must be integers");
  if (w.get<long long>() <= 0 || h.get<long long>() <= 0 || w.get<long long>() > 1 << 20 ||
      h.get<long long>() > 1 << 20) {
    bad_record("width/height out of range");
  }
  rec.width = w.get<int>();
  rec.height = h.get<int>();

  const auto& caption = field(j, "caption");
  if (!caption.is_string()) bad_record("caption must be a string");
  rec.caption = caption.get<std::string>();
  rec.aesthetic = number(field(j, "aesthetic"), "aesthetic");

  const auto& boxes = field(j, "boxes");
  if (!boxes.is_array()) bad_record("boxes must be an array");
  for (const auto& b : boxes) {
    if (!b.is_object()) bad_record("box must be an object");
    OcrBox box;
    box.quad = quad_from_json(field(b, "quad"));
    for (Point& p : box.quad) {
      p.x = std::clamp(p.x, 0.0, static_cast<double>(rec.width));
      p.y = std::clamp(p.y, 0.0, static_cast<double>(rec.height));
    }
    const auto& text = field(b, "text");
    if (!text.is_string()) bad_record("box text must be a string");
    box.text = text.get<std::string>();
    box.conf = number(field(b, "conf"), "conf");
    if (box.conf < 0.0 || box.conf > 1.0) bad_record("conf outside [0,1]");
    rec.boxes.push_back(std::move(box));
  }
  return rec;
}

OcrRecord parse_ocr_record(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) bad_record("not valid JSON");
  return ocr_record_from_json(j);
}

nlohmann::json to_json(const OcrRecord& record) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const OcrBox& b : record.boxes) {
    boxes.push_back({{"quad", quad_to_json(b.quad)}, {"text", b.text}, {"conf", b.conf}});
  }
  return {{"image_id", record.image_id}, {"width", record.width},   {"height", record.height},
          {"caption", record.caption},   {"aesthetic", record.aesthetic}, {"boxes", boxes}};
}

}  // namespace glyphkit
