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

#include "glyphkit/instruction.hpp"

#include <cmath>
#include <numbers>

#include "glyphkit/error.hpp"
#include "glyphkit/font.hpp"
#include "glyphkit/layout.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

namespace {

constexpr int kMaxCanvasSide = 8192;
constexpr double kEdgeTolerancePx = 1e-6;
constexpr double kOverlapAreaPx = 1e-6;

using json = nlohmann::json;

std::string box_field(std::optional<int> box, const std::string& field) {
  if (!box) return field;
  return "boxes[" + std::to_string(*box) + "]." + field;
}

[[noreturn]] void schema_error(std::optional<int> box, const std::string& field,
                               const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, box_field(box, field) + ": " + what, box, field);
}

[[noreturn]] void range_error(std::optional<int> box, const std::string& field,
                              const std::string& what) {
  throw Error(ErrorCode::OutOfRange, box_field(box, field) + ": " + what, box, field);
}

double number_field(const json& obj, const char* name, int box) {
  const json& v = obj.at(name);
  if (!v.is_number()) schema_error(box, name, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) range_error(box, name, "must be finite");
  return d;
}

int integer_field(const json& obj, const char* name, std::optional<int> box) {
  const json& v = obj.at(name);
  if (!v.is_number_integer()) schema_error(box, name, "must be an integer");
  if (v.is_number_unsigned() ? v.get<std::uint64_t>() > 1u << 30
                             : (v.get<std::int64_t>() > 1 << 30 || v.get<std::int64_t>() < -(1 << 30))) {
    range_error(box, name, "integer out of range");
  }
  return static_cast<int>(v.get<std::int64_t>());
}

// Range checks shared by parsing and validation. Returns (field, message) of
// the first violation.
std::optional<std::pair<std::string, std::string>> box_range_problem(const TextBox& b) {
  if (!(b.x >= 0.0 && b.x < 1.0)) return std::pair{"x", "must lie in [0, 1)"};
  if (!(b.y >= 0.0 && b.y < 1.0)) return std::pair{"y", "must lie in [0, 1)"};
  if (!(b.width > 0.0 && b.width <= 1.0)) return std::pair{"width", "must lie in (0, 1]"};
  if (b.ratio && !(*b.ratio > 0.0 && std::isfinite(*b.ratio))) {
    return std::pair{"ratio", "must be a positive number"};
  }
  if (!(b.yaw_deg >= -180.0 && b.yaw_deg <= 180.0)) {
    return std::pair{"yaw_deg", "must lie in [-180, 180]"};
  }
  if (b.rows < 1) return std::pair{"rows", "must be at least 1"};
  return std::nullopt;
}

std::optional<std::pair<std::string, std::string>> canvas_range_problem(const CanvasSpec& c) {
  if (c.width < CanvasSpec::kMinSide || c.width > kMaxCanvasSide) {
    return std::pair{"width", "must lie in [64, 8192]"};
  }
  if (c.height < CanvasSpec::kMinSide || c.height > kMaxCanvasSide) {
    return std::pair{"height", "must lie in [64, 8192]"};
  }
  return std::nullopt;
}

bool has_visible_text(std::string_view text) { return !utf8::split_words(text).empty(); }

TextBox box_from_json(const json& j, int index) {
  if (!j.is_object()) schema_error(index, "", "box must be an object");
  static constexpr const char* kKnown[] = {"text", "x", "y", "width", "ratio", "yaw_deg", "rows"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || item.key() == k;
    if (!known) schema_error(index, item.key(), "unknown field");
  }
  for (const char* required : {"text", "x", "y", "width"}) {
    if (!j.contains(required)) schema_error(index, required, "required field missing");
  }
  TextBox box;
  if (!j.at("text").is_string()) schema_error(index, "text", "must be a string");
  box.text = j.at("text").get<std::string>();
  if (!has_visible_text(box.text)) schema_error(index, "text", "must contain a non-whitespace character");
  box.x = number_field(j, "x", index);
  box.y = number_field(j, "y", index);
  box.width = number_field(j, "width", index);
  if (j.contains("ratio") && !j.at("ratio").is_null()) box.ratio = number_field(j, "ratio", index);
  if (j.contains("yaw_deg")) box.yaw_deg = number_field(j, "yaw_deg", index);
  if (j.contains("rows")) box.rows = integer_field(j, "rows", index);
  if (const auto problem = box_range_problem(box)) range_error(index, problem->first, problem->second);
  return box;
}

}  // namespace

std::string_view to_string(IssueCode code) {
  switch (code) {
    case IssueCode::OutOfRange: return "OutOfRange";
    case IssueCode::EmptyText: return "EmptyText";
    case IssueCode::RowsExceedWords: return "RowsExceedWords";
    case IssueCode::BoxExceedsCanvas: return "BoxExceedsCanvas";
    case IssueCode::Overlap: return "Overlap";
    case IssueCode::TinyFont: return "TinyFont";
    case IssueCode::BorderClip: return "BorderClip";
  }
  return "Unknown";
}

GlyphInstructionSet instructions_from_json(const json& j) {
  if (!j.is_object()) schema_error(std::nullopt, "", "top level must be an object");
  for (const auto& item : j.items()) {
    if (item.key() != "canvas" && item.key() != "boxes") {
      schema_error(std::nullopt, item.key(), "unknown field");
    }
  }
  GlyphInstructionSet set;
  if (j.contains("canvas")) {
    const json& c = j.at("canvas");
    if (!c.is_object()) schema_error(std::nullopt, "canvas", "must be an object");
    for (const auto& item : c.items()) {
      if (item.key() != "width" && item.key() != "height") {
        schema_error(std::nullopt, "canvas." + item.key(), "unknown field");
      }
    }
    for (const char* required : {"width", "height"}) {
      if (!c.contains(required)) schema_error(std::nullopt, std::string("canvas.") + required, "required field missing");
    }
    set.canvas.width = integer_field(c, "width", std::nullopt);
    set.canvas.height = integer_field(c, "height", std::nullopt);
    if (const auto problem = canvas_range_problem(set.canvas)) {
      range_error(std::nullopt, "canvas." + problem->first, problem->second);
    }
  }
  if (!j.contains("boxes")) schema_error(std::nullopt, "boxes", "required field missing");
  const json& boxes = j.at("boxes");
  if (!boxes.is_array()) schema_error(std::nullopt, "boxes", "must be an array");
  set.boxes.reserve(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    set.boxes.push_back(box_from_json(boxes[i], static_cast<int>(i)));
  }
  return set;
}

GlyphInstructionSet parse_instructions(std::string_view raw) {
  json j = json::parse(raw.begin(), raw.end(), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::MalformedSyntax, "instruction file is not valid JSON");
  return instructions_from_json(j);
}

json to_json(const GlyphInstructionSet& set) {
  json boxes = json::array();
  for (const TextBox& b : set.boxes) {
    boxes.push_back({{"text", b.text},
                     {"x", b.x},
                     {"y", b.y},
                     {"width", b.width},
                     {"ratio", b.ratio ? json(*b.ratio) : json(nullptr)},
                     {"yaw_deg", b.yaw_deg},
                     {"rows", b.rows}});
  }
  return {{"canvas", {{"width", set.canvas.width}, {"height", set.canvas.height}}}, {"boxes", boxes}};
}

std::string serialize_instructions(const GlyphInstructionSet& set) { return to_json(set).dump(); }

ValidationReport validate(const GlyphInstructionSet& set) { return validate(set, Font::bundled()); }

ValidationReport validate(const GlyphInstructionSet& set, const Font& font) {
  ValidationReport report;
  if (const auto problem = canvas_range_problem(set.canvas)) {
    report.errors.push_back({-1, IssueCode::OutOfRange, "canvas." + problem->first + " " + problem->second, {}});
    return report;
  }
  const double cw = set.canvas.width;
  const double ch = set.canvas.height;

  std::vector<std::optional<Quad>> frames(set.boxes.size());
  for (std::size_t i = 0; i < set.boxes.size(); ++i) {
    const int idx = static_cast<int>(i);
    const TextBox& box = set.boxes[i];
    if (const auto problem = box_range_problem(box)) {
      report.errors.push_back({idx, IssueCode::OutOfRange, problem->first + " " + problem->second, {}});
      continue;
    }
    const std::size_t words = utf8::split_words(box.text).size();
    if (words == 0) {
      report.errors.push_back({idx, IssueCode::EmptyText, "text has no visible characters", {}});
      continue;
    }
    if (static_cast<std::size_t>(box.rows) > words) {
      report.errors.push_back({idx, IssueCode::RowsExceedWords,
                               std::to_string(box.rows) + " rows requested for " +
                                   std::to_string(words) + " words",
                               {}});
      continue;
    }
    if (box.x + box.width > 1.0 + 1e-9) {
      report.errors.push_back({idx, IssueCode::BoxExceedsCanvas, "x + width extends past the right edge", {}});
      continue;
    }
    BoxLayout layout;
    try {
      layout = layout_box(box, set.canvas, font);
    } catch (const Error&) {
      report.errors.push_back({idx, IssueCode::BoxExceedsCanvas, "text does not fit its box even at 1 px", {}});
      continue;
    }
    if (layout.font_size < kTinyFontPx) {
      report.warnings.push_back({idx, IssueCode::TinyFont,
                                 "fitted font size " + std::to_string(layout.font_size) + " px", {}});
    }
    const Quad corners = layout.frame.corners();
    for (const Point& p : corners) {
      if (p.x < -kEdgeTolerancePx || p.y < -kEdgeTolerancePx || p.x > cw + kEdgeTolerancePx ||
          p.y > ch + kEdgeTolerancePx) {
        report.warnings.push_back({idx, IssueCode::BorderClip, "rotated box leaves the canvas", {}});
        break;
      }
    }
    frames[i] = corners;
  }

  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i]) continue;
    for (std::size_t k = i + 1; k < frames.size(); ++k) {
      if (!frames[k]) continue;
      if (convex_intersection_area(*frames[i], *frames[k]) > kOverlapAreaPx) {
        report.warnings.push_back({static_cast<int>(i), IssueCode::Overlap,
                                   "overlaps box " + std::to_string(k), static_cast<int>(k)});
      }
    }
  }
  return report;
}

json to_json(const ValidationReport& report) {
  const auto issues = [](const std::vector<Issue>& list) {
    json out = json::array();
    for (const Issue& issue : list) {
      json item = {{"box", issue.box}, {"code", std::string(to_string(issue.code))}, {"message", issue.message}};
      if (issue.other) item["other"] = *issue.other;
      out.push_back(std::move(item));
    }
    return out;
  };
  return {{"errors", issues(report.errors)}, {"warnings", issues(report.warnings)}};
}

OcrDerivation from_ocr_record(const OcrRecord& record) {
  OcrDerivation out;
  const double w = record.width;
  const double h = record.height;
  for (std::size_t i = 0; i < record.boxes.size(); ++i) {
    const OcrBox& ocr = record.boxes[i];
    const Quad& q = ocr.quad;
    if (shoelace_area(q) <= 0.0) {
      out.skipped.push_back({static_cast<int>(i), "DegenerateQuad: zero area"});
      continue;
    }
    if (!has_visible_text(ocr.text)) {
      out.skipped.push_back({static_cast<int>(i), "EmptyText: no recognized characters"});
      continue;
    }
    const Rect bounds = bounding_rect(q);
    if (bounds.width <= 0.0 || bounds.x >= w || bounds.y >= h) {
      out.skipped.push_back({static_cast<int>(i), "DegenerateQuad: no horizontal extent"});
      continue;
    }

    // The longest side carries the text direction; its neighbour the height.
    std::size_t longest = 0;
    double longest_len = -1.0;
    for (std::size_t s = 0; s < 4; ++s) {
      const Point a = q[s];
      const Point b = q[(s + 1) % 4];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      if (len > longest_len) {
        longest_len = len;
        longest = s;
      }
    }
    const Point a = q[longest];
    const Point b = q[(longest + 1) % 4];
    const Point c = q[(longest + 2) % 4];
    const double adjacent = std::hypot(c.x - b.x, c.y - b.y);
    if (adjacent <= 0.0) {
      out.skipped.push_back({static_cast<int>(i), "DegenerateQuad: zero height"});
      continue;
    }
    // y grows downward, so a visually counterclockwise angle negates dy.
    double yaw = std::atan2(-(b.y - a.y), b.x - a.x) * 180.0 / std::numbers::pi;
    if (yaw > 90.0) yaw -= 180.0;
    if (yaw < -90.0) yaw += 180.0;
    if (yaw == 0.0) yaw = 0.0;  // drop the sign of -0

    TextBox box;
    box.text = ocr.text;
    box.x = bounds.x / w;
    box.y = bounds.y / h;
    box.width = bounds.width / w;
    box.ratio = longest_len / adjacent;
    box.yaw_deg = yaw;
    box.rows = 1;
    out.set.boxes.push_back(std::move(box));
  }
  return out;
}

}  // namespace glyphkit
