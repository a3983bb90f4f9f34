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

// Glyph instructions: the canvas plus ordered text boxes that describe a glyph
// condition image. Positions and widths are fractions of the canvas so one
// instruction set renders consistently at any resolution.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/ocr_record.hpp"

namespace glyphkit {

class Font;

struct CanvasSpec {
  static constexpr int kMinSide = 64;

  int width = 512;
  int height = 512;

  friend bool operator==(const CanvasSpec&, const CanvasSpec&) = default;
};

struct TextBox {
  std::string text;
  double x = 0.0;      // top-left, fraction of canvas width, [0,1)
  double y = 0.0;      // top-left, fraction of canvas height, [0,1)
  double width = 0.0;  // fraction of canvas width, (0,1]
  std::optional<double> ratio;  // width / height; absent = natural line metrics
  double yaw_deg = 0.0;         // counterclockwise, [-180,180]
  int rows = 1;

  friend bool operator==(const TextBox&, const TextBox&) = default;
};

struct GlyphInstructionSet {
  CanvasSpec canvas;
  std::vector<TextBox> boxes;

  friend bool operator==(const GlyphInstructionSet&, const GlyphInstructionSet&) = default;
};

enum class IssueCode {
  // errors
  OutOfRange,
  EmptyText,
  RowsExceedWords,
  BoxExceedsCanvas,
  // warnings
  Overlap,
  TinyFont,
  BorderClip,
};

std::string_view to_string(IssueCode code);

struct Issue {
  int box = 0;
  IssueCode code = IssueCode::OutOfRange;
  std::string message;
  /// Second box of an Overlap pair, otherwise absent.
  std::optional<int> other;

  friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Fitted size below which TinyFont is reported.
inline constexpr int kTinyFontPx = 8;

/// Parses the instruction file format. Throws Error with code
/// MalformedSyntax, SchemaViolation, or OutOfRange; the error names the box
/// index and field where applicable.
GlyphInstructionSet parse_instructions(std::string_view raw);
GlyphInstructionSet instructions_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GlyphInstructionSet& set);
std::string serialize_instructions(const GlyphInstructionSet& set);

ValidationReport validate(const GlyphInstructionSet& set);
ValidationReport validate(const GlyphInstructionSet& set, const Font& font);

nlohmann::json to_json(const ValidationReport& report);

struct SkippedQuad {
  int index = 0;
  std::string reason;
};

struct OcrDerivation {
  GlyphInstructionSet set;
  std::vector<SkippedQuad> skipped;
};

/// Derives one text box per usable OCR quad (training-time glyph maps).
/// Zero-area quads and blank texts are skipped and listed in `skipped`.
/// The canvas is left at its default size.
OcrDerivation from_ocr_record(const OcrRecord& record);

}  // namespace glyphkit
