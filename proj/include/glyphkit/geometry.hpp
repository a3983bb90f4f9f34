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

#include <array>
#include <span>
#include <vector>

namespace glyphkit {

/// Image-space point: x to the right, y downward, in pixels.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

using Quad = std::array<Point, 4>;

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

/// Absolute polygon area by the shoelace formula.
double shoelace_area(std::span<const Point> polygon);

/// Signed shoelace area; positive for counterclockwise order in a y-up frame.
double signed_area(std::span<const Point> polygon);

Rect bounding_rect(std::span<const Point> points);

/// Area of the intersection of two convex polygons (Sutherland-Hodgman clip).
double convex_intersection_area(std::span<const Point> a, std::span<const Point> b);

/// A rectangle of size width x height anchored at `origin` (its top-left
/// corner before rotation) and rotated counterclockwise, as seen on screen,
/// by `yaw_deg` about that corner.
class BoxFrame {
 public:
  BoxFrame() = default;
  BoxFrame(Point origin, double width, double height, double yaw_deg);

  Point origin() const { return origin_; }
  double width() const { return width_; }
  double height() const { return height_; }
  double yaw_deg() const { return yaw_deg_; }

  /// Box-local coordinates (u along the text direction, v downward) to canvas.
  Point to_canvas(Point local) const;
  Point to_local(Point canvas) const;

  bool contains_local(Point local) const {
    return local.x >= 0.0 && local.x <= width_ && local.y >= 0.0 && local.y <= height_;
  }

  /// Corners in order top-left, top-right, bottom-right, bottom-left.
  Quad corners() const;

 private:
  Point origin_{};
  double width_ = 0.0;
  double height_ = 0.0;
  double yaw_deg_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

/// cos/sin of an angle in degrees, exact at multiples of 90.
std::array<double, 2> cos_sin_deg(double deg);

}  // namespace glyphkit
