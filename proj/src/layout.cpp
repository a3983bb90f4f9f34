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

#include "glyphkit/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glyphkit/error.hpp"
#include "glyphkit/font.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

std::vector<std::string> split_rows(std::string_view text, int rows) {
  const std::vector<std::string> words = utf8::split_words(text);
  const int n = static_cast<int>(words.size());
  if (rows < 1 || rows > n) {
    throw Error(ErrorCode::RowsExceedWords,
                "cannot place " + std::to_string(rows) + " non-empty rows from " +
                    std::to_string(n) + " words");
  }

  std::vector<std::size_t> prefix(n + 1, 0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + utf8::length(words[i]);
  // Characters of words [i, j) joined by single spaces.
  const auto span_len = [&](int i, int j) {
    return prefix[j] - prefix[i] + static_cast<std::size_t>(j - i - 1);
  };

  // tail[k][i]: minimal longest row when words [i, n) form k rows.
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> tail(rows + 1, std::vector<std::size_t>(n + 1, kInf));
  tail[0][n] = 0;
  for (int k = 1; k <= rows; ++k) {
    for (int i = n - k; i >= 0; --i) {
      std::size_t best = kInf;
      for (int j = i + 1; j <= n - (k - 1); ++j) {
        if (tail[k - 1][j] == kInf) continue;
        best = std::min(best, std::max(span_len(i, j), tail[k - 1][j]));
      }
      tail[k][i] = best;
    }
  }
  const std::size_t optimum = tail[rows][0];

  // Earliest feasible breakpoint at each step yields the lexicographically
  // smallest optimal partition.
  std::vector<std::string> out;
  out.reserve(rows);
  int i = 0;
  for (int k = rows; k >= 1; --k) {
    int j = i + 1;
    while (!(span_len(i, j) <= optimum && tail[k - 1][j] <= optimum)) ++j;
    std::string row = words[i];
    for (int w = i + 1; w < j; ++w) {
      row += ' ';
      row += words[w];
    }
    out.push_back(std::move(row));
    i = j;
  }
  return out;
}

int fit_font_size(std::span<const std::string> rows, double box_width_px,
                  std::optional<double> box_height_px, const Font& font) {
  const auto fits = [&](int s) {
    for (const std::string& row : rows) {
      if (font.text_advance_px(row, s) > box_width_px) return false;
    }
    if (box_height_px && static_cast<double>(rows.size()) * font.line_height_px(s) > *box_height_px) {
      return false;
    }
    return true;
  };

  std::int64_t widest = 0;
  for (const std::string& row : rows) widest = std::max(widest, font.text_advance_units(row));
  double bound = kMaxFontSizePx;
  if (widest > 0) bound = std::min(bound, box_width_px * font.units_per_em() / static_cast<double>(widest));
  if (box_height_px && !rows.empty()) {
    const double per_row = font.line_height_px(1.0);
    if (per_row > 0.0) bound = std::min(bound, *box_height_px / (per_row * static_cast<double>(rows.size())));
  }
  int s = static_cast<int>(std::clamp(std::floor(bound), 0.0, static_cast<double>(kMaxFontSizePx)));
  // The closed-form bound can be off by one ulp either way.
  while (s < kMaxFontSizePx && fits(s + 1)) ++s;
  while (s >= 1 && !fits(s)) --s;
  if (s < 1) {
    throw Error(ErrorCode::Unrenderable, "text does not fit the box even at 1 px");
  }
  return s;
}

BoxLayout layout_box(const TextBox& box, const CanvasSpec& canvas, const Font& font) {
  const std::vector<std::string> rows = split_rows(box.text, box.rows);
  const double box_w = box.width * canvas.width;
  std::optional<double> fixed_h;
  if (box.ratio) fixed_h = box_w / *box.ratio;

  const int size = fit_font_size(rows, box_w, fixed_h, font);
  const double line_h = font.line_height_px(size);
  const double text_h = line_h * static_cast<double>(rows.size());
  const double box_h = fixed_h.value_or(text_h);

  BoxLayout layout;
  layout.frame = BoxFrame({box.x * canvas.width, box.y * canvas.height}, box_w, box_h, box.yaw_deg);
  layout.font_size = size;
  const double top = std::max(0.0, (box_h - text_h) / 2.0);
  const double ascent = font.ascender_px(size);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    PlacedLine line;
    line.text = rows[r];
    line.font_size = size;
    line.advance = font.text_advance_px(rows[r], size);
    line.baseline = {(box_w - line.advance) / 2.0, top + ascent + line_h * static_cast<double>(r)};
    layout.lines.push_back(std::move(line));
  }
  return layout;
}

}  // namespace glyphkit
