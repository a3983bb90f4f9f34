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

// Antialiased coverage rasterization with a fixed 4x4 sample grid per pixel
// and the nonzero winding rule. No hinting, no gamma: a pixel's shade is a
// pure function of how many of its 16 samples fall inside the outline.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glyphkit/geometry.hpp"

namespace glyphkit::raster {

inline constexpr int kOversample = 4;
inline constexpr int kSamplesPerPixel = kOversample * kOversample;

/// Directed line segment in canvas pixels.
struct Edge {
  Point from;
  Point to;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelRegion {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

/// Closed polylines to fill, clipped to `clip` (samples outside the rotated
/// box are never inked) and to `region`.
struct CoverageJob {
  std::vector<Edge> edges;
  BoxFrame clip;
  PixelRegion region;
};

/// Gray level for a sample count in [0, 16]: 255 when uncovered, 0 when full.
constexpr std::uint8_t shade(int covered) {
  return static_cast<std::uint8_t>(255 - (covered * 255 + kSamplesPerPixel / 2) / kSamplesPerPixel);
}

/// Scanline rasterizer; rows are distributed over `threads` OpenMP threads
/// (0 = runtime default). Composites onto `canvas` (row-major, `width`
/// columns) with per-pixel min. Output does not depend on the thread count.
void fill_coverage(const CoverageJob& job, std::span<std::uint8_t> canvas, int width,
                   int threads);

/// Serial reference: evaluates the winding number of every sample against
/// every edge. Same sampling and crossing predicate as fill_coverage, no
/// shared code path; kept for tests and benchmarks.
void fill_coverage_reference(const CoverageJob& job, std::span<std::uint8_t> canvas, int width);

}  // namespace glyphkit::raster
