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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glyphkit/geometry.hpp"
#include "glyphkit/instruction.hpp"

namespace glyphkit {

class Font;

/// Upper bound on fitted sizes; only reachable for rows made entirely of
/// zero-advance glyphs.
inline constexpr int kMaxFontSizePx = 4096;

/// Splits `text` into exactly `rows` word groups minimizing the longest row
/// (in characters, counting the joining spaces). Among optimal partitions
/// the one with the earliest breakpoints wins. Throws RowsExceedWords.
std::vector<std::string> split_rows(std::string_view text, int rows);

/// Largest integer pixel size at which every row fits `box_width_px` and,
/// when given, the stacked rows fit `box_height_px`. Throws Unrenderable
/// when size 1 already violates a constraint.
int fit_font_size(std::span<const std::string> rows, double box_width_px,
                  std::optional<double> box_height_px, const Font& font);

struct PlacedLine {
  std::string text;
  int font_size = 0;
  Point baseline;  // box-local, before rotation
  double advance = 0.0;
};

struct BoxLayout {
  BoxFrame frame;  // box pixel rectangle on the canvas, rotated by yaw
  int font_size = 0;
  std::vector<PlacedLine> lines;
};

/// Pixel box of a text box: x*W, y*H, width*W; height from the ratio when
/// present, otherwise rows x line height at the width-fitted size.
/// Throws RowsExceedWords or Unrenderable.
BoxLayout layout_box(const TextBox& box, const CanvasSpec& canvas, const Font& font);

}  // namespace glyphkit
