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

#include "glyphkit/renderer.hpp"

#include <algorithm>
#include <cmath>

#include "glyphkit/error.hpp"
#include "glyphkit/font.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

namespace {

constexpr int kMaxCurveSteps = 16;

class OutlineSink {
 public:
  OutlineSink(const BoxFrame& frame, std::vector<raster::Edge>& edges)
      : frame_(frame), edges_(edges) {}

  void move_to(Point local) {
    start_ = last_ = frame_.to_canvas(local);
    last_local_ = local;
  }

  void line_to(Point local) {
    const Point p = frame_.to_canvas(local);
    edges_.push_back({last_, p});
    last_ = p;
    last_local_ = local;
  }

  void quad_to(Point control, Point end) {
    const Point start = last_local_;
    // Subdivision count depends only on the curve's pixel-space deviation.
    const double dx = start.x - 2.0 * control.x + end.x;
    const double dy = start.y - 2.0 * control.y + end.y;
    const double deviation = std::sqrt(dx * dx + dy * dy);
    const int steps = std::clamp(static_cast<int>(std::ceil(std::sqrt(deviation * 2.0))), 1,
                                 kMaxCurveSteps);
    for (int i = 1; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      const double u = 1.0 - t;
      line_to({u * u * start.x + 2.0 * u * t * control.x + t * t * end.x,
               u * u * start.y + 2.0 * u * t * control.y + t * t * end.y});
    }
  }

  void close() {
    if (last_ != start_) edges_.push_back({last_, start_});
    last_ = start_;
  }

 private:
  const BoxFrame& frame_;
  std::vector<raster::Edge>& edges_;
  Point start_{};
  Point last_{};
  Point last_local_{};
};

Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

// Emits one TrueType contour (quadratic B-spline with implied on-curve
// midpoints between consecutive off-curve points).
void emit_contour(const Contour& contour, double scale, Point pen, OutlineSink& sink) {
  const std::size_t n = contour.size();
  if (n < 2) return;
  const auto local = [&](const OutlinePoint& p) {
    return Point{pen.x + p.x * scale, pen.y - p.y * scale};
  };

  // Find a starting on-curve point, synthesizing one if every point is off.
  std::size_t first_on = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (contour[i].on_curve) {
      first_on = i;
      break;
    }
  }
  Point start;
  std::size_t begin = 0;
  if (first_on == n) {
    start = midpoint(local(contour[0]), local(contour[1]));
    begin = 1;
  } else {
    start = local(contour[first_on]);
    begin = first_on + 1;
  }
  sink.move_to(start);

  std::optional<Point> control;
  for (std::size_t k = 0; k < n; ++k) {
    const OutlinePoint& op = contour[(begin + k) % n];
    const Point p = local(op);
    const bool closing = k + 1 == n && first_on != n;
    if (op.on_curve) {
      if (control) {
        sink.quad_to(*control, p);
        control.reset();
      } else {
        sink.line_to(p);
      }
    } else {
      if (control) sink.quad_to(*control, midpoint(*control, p));
      control = p;
    }
    if (closing) break;
  }
  if (control) sink.quad_to(*control, start);
  sink.close();
}

raster::PixelRegion region_for(const BoxFrame& frame, const CanvasSpec& canvas) {
  const Quad corners = frame.corners();
  const Rect r = bounding_rect(corners);
  raster::PixelRegion reg;
  reg.x0 = std::max(0, static_cast<int>(std::floor(r.x)));
  reg.y0 = std::max(0, static_cast<int>(std::floor(r.y)));
  reg.x1 = std::min(canvas.width, static_cast<int>(std::ceil(r.x + r.width)) + 1);
  reg.y1 = std::min(canvas.height, static_cast<int>(std::ceil(r.y + r.height)) + 1);
  return reg;
}

}  // namespace

raster::CoverageJob build_coverage_job(const BoxLayout& layout, const CanvasSpec& canvas,
                                       const Font& font) {
  raster::CoverageJob job;
  job.clip = layout.frame;
  job.region = region_for(layout.frame, canvas);
  OutlineSink sink(layout.frame, job.edges);
  for (const PlacedLine& line : layout.lines) {
    const double scale = static_cast<double>(line.font_size) / font.units_per_em();
    double pen_x = line.baseline.x;
    for (char32_t c : utf8::decode(line.text)) {
      const std::uint16_t glyph = font.glyph_index(c);
      const GlyphOutline outline = font.outline(glyph);
      for (const Contour& contour : outline.contours) {
        emit_contour(contour, scale, {pen_x, line.baseline.y}, sink);
      }
      pen_x += font.advance_units(glyph) * scale;
    }
  }
  return job;
}

RenderResult render(const GlyphInstructionSet& set, const RenderOptions& options) {
  const Font& font = options.font ? *options.font : Font::bundled();
  RenderResult result;
  result.image = GlyphImage(set.canvas.width, set.canvas.height);
  for (std::size_t i = 0; i < set.boxes.size(); ++i) {
    BoxLayout layout;
    try {
      layout = layout_box(set.boxes[i], set.canvas, font);
    } catch (const Error& e) {
      result.log.push_back({static_cast<int>(i), std::string(to_string(e.code())) + ": " + e.what()});
      continue;
    }
    const raster::CoverageJob job = build_coverage_job(layout, set.canvas, font);
    if (options.backend == RasterBackend::Reference) {
      raster::fill_coverage_reference(job, result.image.pixels, result.image.width);
    } else {
      raster::fill_coverage(job, result.image.pixels, result.image.width, options.threads);
    }
  }
  return result;
}

InkMeasure measure_ink(const GlyphImage& image) {
  InkMeasure m;
  int x0 = image.width;
  int y0 = image.height;
  int x1 = -1;
  int y1 = -1;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (image.at(x, y) >= kInkThreshold) continue;
      ++m.count;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (m.count > 0) m.bounds = PixelRect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
  return m;
}

}  // namespace glyphkit
