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

#include "glyphkit/raster.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace glyphkit::raster {

namespace {

// Edge with lo.y < hi.y and the winding contribution of its original direction.
struct MonotoneEdge {
  Point lo;
  Point hi;
  int dir = 0;
};

std::vector<MonotoneEdge> monotone_edges(const std::vector<Edge>& edges) {
  std::vector<MonotoneEdge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.from.y == e.to.y) continue;
    if (e.from.y < e.to.y) {
      out.push_back({e.from, e.to, 1});
    } else {
      out.push_back({e.to, e.from, -1});
    }
  }
  return out;
}

// The only arithmetic shared by both kernels: where a scanline meets an edge.
inline bool crosses(const MonotoneEdge& e, double y) { return e.lo.y <= y && y < e.hi.y; }

inline double crossing_x(const MonotoneEdge& e, double y) {
  return e.lo.x + (y - e.lo.y) * (e.hi.x - e.lo.x) / (e.hi.y - e.lo.y);
}

inline double sample_coord(int index) { return (index + 0.5) / kOversample; }

struct Crossing {
  double x;
  int dir;
};

}  // namespace

void fill_coverage(const CoverageJob& job, std::span<std::uint8_t> canvas, int width,
                   int threads) {
  const PixelRegion reg = job.region;
  if (reg.empty()) return;
  const std::vector<MonotoneEdge> edges = monotone_edges(job.edges);
  const int rows = reg.y1 - reg.y0;
  const int cols = reg.x1 - reg.x0;

  // Bucket edge indices by the pixel rows they can touch.
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(rows));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const int first = std::max(reg.y0, static_cast<int>(std::floor(edges[i].lo.y)));
    const int last = std::min(reg.y1 - 1, static_cast<int>(std::floor(edges[i].hi.y)));
    for (int py = first; py <= last; ++py) buckets[py - reg.y0].push_back(i);
  }

  const int sample_x0 = reg.x0 * kOversample;
  const int sample_x1 = reg.x1 * kOversample;  // exclusive

#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
  for (int r = 0; r < rows; ++r) {
    const std::vector<int>& bucket = buckets[r];
    if (bucket.empty()) continue;
    const int py = reg.y0 + r;
    std::vector<int> counts(static_cast<std::size_t>(cols), 0);
    std::vector<Crossing> crossings;
    crossings.reserve(bucket.size());
    for (int k = 0; k < kOversample; ++k) {
      const double ys = py + sample_coord(k);
      crossings.clear();
      for (int idx : bucket) {
        const MonotoneEdge& e = edges[idx];
        if (crosses(e, ys)) crossings.push_back({crossing_x(e, ys), e.dir});
      }
      if (crossings.size() < 2) continue;
      std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
        return a.x < b.x || (a.x == b.x && a.dir < b.dir);
      });
      int winding = 0;
      for (std::size_t m = 0; m + 1 < crossings.size(); ++m) {
        winding += crossings[m].dir;
        if (winding == 0) continue;
        const double left = crossings[m].x;
        const double right = crossings[m + 1].x;
        if (!(left < right)) continue;
        // Samples strictly right of `left` and not right of `right`.
        int g = static_cast<int>(std::floor(left * kOversample - 0.5));
        while (!(left < sample_coord(g))) ++g;
        while (g > sample_x0 && left < sample_coord(g - 1)) --g;
        g = std::max(g, sample_x0);
        for (; g < sample_x1 && sample_coord(g) <= right; ++g) {
          const Point local = job.clip.to_local({sample_coord(g), ys});
          if (job.clip.contains_local(local)) ++counts[g / kOversample - reg.x0];
        }
      }
    }
    std::uint8_t* out = canvas.data() + static_cast<std::size_t>(py) * width + reg.x0;
    for (int c = 0; c < cols; ++c) {
      if (counts[c] == 0) continue;
      out[c] = std::min(out[c], shade(counts[c]));
    }
  }
}

void fill_coverage_reference(const CoverageJob& job, std::span<std::uint8_t> canvas, int width) {
  const PixelRegion reg = job.region;
  if (reg.empty()) return;
  const std::vector<MonotoneEdge> edges = monotone_edges(job.edges);
  for (int py = reg.y0; py < reg.y1; ++py) {
    for (int px = reg.x0; px < reg.x1; ++px) {
      int covered = 0;
      for (int k = 0; k < kOversample; ++k) {
        const double ys = py + sample_coord(k);
        for (int j = 0; j < kOversample; ++j) {
          const double xs = sample_coord(px * kOversample + j);
          if (!job.clip.contains_local(job.clip.to_local({xs, ys}))) continue;
          int winding = 0;
          for (const MonotoneEdge& e : edges) {
            if (crosses(e, ys) && crossing_x(e, ys) < xs) winding += e.dir;
          }
          if (winding != 0) ++covered;
        }
      }
      if (covered == 0) continue;
      std::uint8_t& dst = canvas[static_cast<std::size_t>(py) * width + px];
      dst = std::min(dst, shade(covered));
    }
  }
}

}  // namespace glyphkit::raster
