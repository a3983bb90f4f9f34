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
#include <optional>
#include <string>
#include <vector>

#include "glyphkit/instruction.hpp"
#include "glyphkit/layout.hpp"
#include "glyphkit/raster.hpp"

namespace glyphkit {

class Font;

/// 8-bit grayscale, row-major; 255 is the white background, 0 full ink.
struct GlyphImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GlyphImage() = default;
  GlyphImage(int w, int h, std::uint8_t fill = 255)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const GlyphImage&, const GlyphImage&) = default;
};

struct RenderLogEntry {
  int box = 0;
  std::string message;
};

struct RenderResult {
  GlyphImage image;
  std::vector<RenderLogEntry> log;  // boxes skipped as unrenderable
};

enum class RasterBackend {
  Scanline,   // OpenMP-parallel kernel
  Reference,  // serial per-sample kernel, for testing
};

struct RenderOptions {
  const Font* font = nullptr;  // defaults to the bundled font
  int threads = 1;             // 0 = OpenMP default
  RasterBackend backend = RasterBackend::Scanline;
};

/// Builds the coverage job (flattened, rotated glyph outlines) for one laid
/// out box.
raster::CoverageJob build_coverage_job(const BoxLayout& layout, const CanvasSpec& canvas,
                                       const Font& font);

/// Rasterizes every box in order onto a white canvas, darkest pixel wins.
/// Boxes that cannot be laid out are skipped and logged.
RenderResult render(const GlyphInstructionSet& set, const RenderOptions& options = {});

struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

struct InkMeasure {
  std::size_t count = 0;
  std::optional<PixelRect> bounds;
};

/// Ink pixel = value below 128.
inline constexpr std::uint8_t kInkThreshold = 128;

InkMeasure measure_ink(const GlyphImage& image);

}  // namespace glyphkit
