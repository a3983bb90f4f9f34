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

#include "glyphkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace glyphkit {

double signed_area(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

double shoelace_area(std::span<const Point> polygon) {
  return std::abs(signed_area(polygon));
}

Rect bounding_rect(std::span<const Point> points) {
  if (points.empty()) return {};
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const Point& p : points) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Point> oriented(std::span<const Point> poly, bool positive) {
  std::vector<Point> out(poly.begin(), poly.end());
  if ((signed_area(out) > 0.0) != positive) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

double convex_intersection_area(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() < 3 || b.size() < 3) return 0.0;
  if (shoelace_area(a) == 0.0 || shoelace_area(b) == 0.0) return 0.0;
  std::vector<Point> subject = oriented(a, true);
  const std::vector<Point> clip = oriented(b, true);

  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Point e0 = clip[i];
    const Point e1 = clip[(i + 1) % clip.size()];
    std::vector<Point> input;
    input.swap(subject);
    for (std::size_t j = 0; j < input.size(); ++j) {
      const Point cur = input[j];
      const Point prev = input[(j + input.size() - 1) % input.size()];
      const double dc = cross(e0, e1, cur);
      const double dp = cross(e0, e1, prev);
      const bool cur_in = dc >= 0.0;
      const bool prev_in = dp >= 0.0;
      if (cur_in != prev_in) {
        const double t = dp / (dp - dc);
        subject.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
      if (cur_in) subject.push_back(cur);
    }
  }
  return shoelace_area(subject);
}

std::array<double, 2> cos_sin_deg(double deg) {
  const double r = std::fmod(deg, 360.0);
  if (r == 0.0) return {1.0, 0.0};
  if (r == 90.0 || r == -270.0) return {0.0, 1.0};
  if (r == 180.0 || r == -180.0) return {-1.0, 0.0};
  if (r == 270.0 || r == -90.0) return {0.0, -1.0};
  const double rad = deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

BoxFrame::BoxFrame(Point origin, double width, double height, double yaw_deg)
    : origin_(origin), width_(width), height_(height), yaw_deg_(yaw_deg) {
  const auto [c, s] = cos_sin_deg(yaw_deg);
  cos_ = c;
  sin_ = s;
}

// The y axis points down, so a visually counterclockwise turn maps the
// local +u direction to (cos, -sin) and +v to (sin, cos).
Point BoxFrame::to_canvas(Point local) const {
  return {origin_.x + local.x * cos_ + local.y * sin_,
          origin_.y - local.x * sin_ + local.y * cos_};
}

Point BoxFrame::to_local(Point canvas) const {
  const double dx = canvas.x - origin_.x;
  const double dy = canvas.y - origin_.y;
  return {dx * cos_ - dy * sin_, dx * sin_ + dy * cos_};
}

Quad BoxFrame::corners() const {
  return {to_canvas({0.0, 0.0}), to_canvas({width_, 0.0}), to_canvas({width_, height_}),
          to_canvas({0.0, height_})};
}

}  // namespace glyphkit
