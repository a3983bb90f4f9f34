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

#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace glyphkit {

/// One point of a TrueType contour, in font units (y up).
struct OutlinePoint {
  double x = 0.0;
  double y = 0.0;
  bool on_curve = true;
};

using Contour = std::vector<OutlinePoint>;

struct GlyphOutline {
  std::vector<Contour> contours;
};

/// Minimal TrueType (glyf-flavoured sfnt) reader: cmap formats 4 and 12,
/// horizontal metrics, and simple plus composite glyph outlines. No hinting,
/// no kerning. Immutable after construction and safe to share across threads.
class Font {
 public:
  /// Parses a font file; throws Error(MalformedFont) on structural problems.
  explicit Font(std::vector<std::uint8_t> data);

  /// The font compiled into the library (DejaVu Sans).
  static const Font& bundled();

  int units_per_em() const { return units_per_em_; }
  int ascender() const { return ascender_; }
  int descender() const { return descender_; }
  int line_gap() const { return line_gap_; }
  int glyph_count() const { return glyph_count_; }

  /// Glyph id for a code point; 0 (.notdef) when unmapped.
  std::uint16_t glyph_index(char32_t code_point) const;
  int advance_units(std::uint16_t glyph) const;
  int left_side_bearing(std::uint16_t glyph) const;

  /// Sum of advance widths for a UTF-8 string, in font units.
  std::int64_t text_advance_units(std::string_view utf8) const;
  double text_advance_px(std::string_view utf8, double size_px) const;
  double line_height_px(double size_px) const;
  double ascender_px(double size_px) const;

  GlyphOutline outline(std::uint16_t glyph) const;

 private:
  struct Table {
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
  };

  Table require_table(const char* tag) const;
  void parse_cmap(Table cmap);
  void append_outline(std::uint16_t glyph, int depth, const double xform[6],
                      GlyphOutline& out) const;

  std::vector<std::uint8_t> data_;
  std::unordered_map<std::uint32_t, Table> tables_;
  int units_per_em_ = 0;
  int ascender_ = 0;
  int descender_ = 0;
  int line_gap_ = 0;
  int glyph_count_ = 0;
  int hmetric_count_ = 0;
  bool long_loca_ = false;
  Table hmtx_{};
  Table loca_{};
  Table glyf_{};

  struct Segment {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    // format 4: delta and range offset position; format 12: start glyph.
    std::int32_t delta = 0;
    std::uint32_t range_offset_pos = 0;
    bool sequential = false;
  };
  std::vector<Segment> segments_;
};

}  // namespace glyphkit
