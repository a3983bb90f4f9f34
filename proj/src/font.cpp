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

#include "glyphkit/font.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "glyphkit/error.hpp"
#include "glyphkit/utf8.hpp"

extern "C" {
extern const unsigned char glyphkit_bundled_font_data[];
extern const unsigned long glyphkit_bundled_font_size;
}

namespace glyphkit {

namespace {

constexpr std::uint32_t tag_value(const char* tag) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(tag[0])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(tag[1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(tag[2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(tag[3]));
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedFont, "malformed font: " + what);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8(std::size_t at) const {
    check(at, 1);
    return data_[at];
  }
  std::uint16_t u16(std::size_t at) const {
    check(at, 2);
    return static_cast<std::uint16_t>((data_[at] << 8) | data_[at + 1]);
  }
  std::int16_t i16(std::size_t at) const { return static_cast<std::int16_t>(u16(at)); }
  std::uint32_t u32(std::size_t at) const {
    check(at, 4);
    return (static_cast<std::uint32_t>(data_[at]) << 24) |
           (static_cast<std::uint32_t>(data_[at + 1]) << 16) |
           (static_cast<std::uint32_t>(data_[at + 2]) << 8) |
           static_cast<std::uint32_t>(data_[at + 3]);
  }
  double f2dot14(std::size_t at) const { return i16(at) / 16384.0; }

 private:
  void check(std::size_t at, std::size_t n) const {
    if (at > data_.size() || data_.size() - at < n) malformed("read past end of data");
  }
  std::span<const std::uint8_t> data_;
};

}  // namespace

Font::Font(std::vector<std::uint8_t> data) : data_(std::move(data)) {
  const Reader r(data_);
  const std::uint32_t version = r.u32(0);
  if (version != 0x00010000 && version != tag_value("true")) {
    malformed("unsupported sfnt version (only TrueType outlines are handled)");
  }
  const int num_tables = r.u16(4);
  for (int i = 0; i < num_tables; ++i) {
    const std::size_t rec = 12 + 16 * static_cast<std::size_t>(i);
    const Table t{r.u32(rec + 8), r.u32(rec + 12)};
    if (t.offset > data_.size() || data_.size() - t.offset < t.length) {
      malformed("table extends past end of file");
    }
    tables_[r.u32(rec)] = t;
  }

  const Table head = require_table("head");
  units_per_em_ = r.u16(head.offset + 18);
  long_loca_ = r.i16(head.offset + 50) != 0;
  if (units_per_em_ <= 0) malformed("unitsPerEm is zero");

  const Table hhea = require_table("hhea");
  ascender_ = r.i16(hhea.offset + 4);
  descender_ = r.i16(hhea.offset + 6);
  line_gap_ = r.i16(hhea.offset + 8);
  hmetric_count_ = r.u16(hhea.offset + 34);

  const Table maxp = require_table("maxp");
  glyph_count_ = r.u16(maxp.offset + 4);

  hmtx_ = require_table("hmtx");
  loca_ = require_table("loca");
  glyf_ = require_table("glyf");
  if (hmetric_count_ == 0 || hmetric_count_ > glyph_count_) malformed("bad hmtx count");
  if (hmtx_.length < 4u * static_cast<std::uint32_t>(hmetric_count_)) malformed("short hmtx");
  const std::uint32_t loca_entry = long_loca_ ? 4 : 2;
  if (loca_.length < loca_entry * (static_cast<std::uint32_t>(glyph_count_) + 1)) {
    malformed("short loca");
  }

  parse_cmap(require_table("cmap"));
}

const Font& Font::bundled() {
  static const Font font(std::vector<std::uint8_t>(
      glyphkit_bundled_font_data, glyphkit_bundled_font_data + glyphkit_bundled_font_size));
  return font;
}

Font::Table Font::require_table(const char* tag) const {
  const auto it = tables_.find(tag_value(tag));
  if (it == tables_.end()) malformed(std::string("missing table ") + tag);
  return it->second;
}

void Font::parse_cmap(Table cmap) {
  const Reader r(data_);
  const int count = r.u16(cmap.offset + 2);
  // Preference: full-repertoire format 12, then BMP format 4.
  std::uint32_t best = 0;
  int best_rank = 0;
  for (int i = 0; i < count; ++i) {
    const std::size_t rec = cmap.offset + 4 + 8 * static_cast<std::size_t>(i);
    const int platform = r.u16(rec);
    const int encoding = r.u16(rec + 2);
    const std::uint32_t sub = cmap.offset + r.u32(rec + 4);
    const int format = r.u16(sub);
    const bool unicode = platform == 0 || (platform == 3 && (encoding == 1 || encoding == 10));
    if (!unicode) continue;
    const int rank = format == 12 ? 2 : (format == 4 ? 1 : 0);
    if (rank > best_rank) {
      best_rank = rank;
      best = sub;
    }
  }
  if (best_rank == 0) malformed("no Unicode cmap subtable in format 4 or 12");

  if (best_rank == 2) {
    const std::uint32_t groups = r.u32(best + 12);
    segments_.reserve(groups);
    for (std::uint32_t g = 0; g < groups; ++g) {
      const std::size_t at = best + 16 + 12 * static_cast<std::size_t>(g);
      Segment s;
      s.start = r.u32(at);
      s.end = r.u32(at + 4);
      s.delta = static_cast<std::int32_t>(r.u32(at + 8));
      s.sequential = true;
      segments_.push_back(s);
    }
  } else {
    const int seg_count = r.u16(best + 6) / 2;
    const std::size_t ends = best + 14;
    const std::size_t starts = ends + 2 * static_cast<std::size_t>(seg_count) + 2;
    const std::size_t deltas = starts + 2 * static_cast<std::size_t>(seg_count);
    const std::size_t ranges = deltas + 2 * static_cast<std::size_t>(seg_count);
    segments_.reserve(seg_count);
    for (int i = 0; i < seg_count; ++i) {
      Segment s;
      s.end = r.u16(ends + 2 * i);
      s.start = r.u16(starts + 2 * i);
      s.delta = r.i16(deltas + 2 * i);
      const std::uint16_t range_offset = r.u16(ranges + 2 * i);
      s.range_offset_pos =
          range_offset == 0 ? 0 : static_cast<std::uint32_t>(ranges + 2 * i + range_offset);
      segments_.push_back(s);
    }
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
}

std::uint16_t Font::glyph_index(char32_t code_point) const {
  const auto it = std::upper_bound(
      segments_.begin(), segments_.end(), static_cast<std::uint32_t>(code_point),
      [](std::uint32_t cp, const Segment& s) { return cp < s.start; });
  if (it == segments_.begin()) return 0;
  const Segment& s = *std::prev(it);
  if (code_point > s.end) return 0;
  std::uint32_t glyph = 0;
  if (s.sequential) {
    glyph = static_cast<std::uint32_t>(s.delta) + (code_point - s.start);
  } else if (s.range_offset_pos == 0) {
    glyph = (code_point + static_cast<std::uint32_t>(s.delta)) & 0xFFFF;
  } else {
    const Reader r(data_);
    const std::size_t at = s.range_offset_pos + 2 * (code_point - s.start);
    if (at + 2 > data_.size()) return 0;
    glyph = r.u16(at);
    if (glyph != 0) glyph = (glyph + static_cast<std::uint32_t>(s.delta)) & 0xFFFF;
  }
  return glyph < static_cast<std::uint32_t>(glyph_count_) ? static_cast<std::uint16_t>(glyph) : 0;
}

int Font::advance_units(std::uint16_t glyph) const {
  const Reader r(data_);
  const int idx = std::min<int>(glyph, hmetric_count_ - 1);
  return r.u16(hmtx_.offset + 4 * static_cast<std::size_t>(idx));
}

int Font::left_side_bearing(std::uint16_t glyph) const {
  const Reader r(data_);
  if (glyph < hmetric_count_) return r.i16(hmtx_.offset + 4 * static_cast<std::size_t>(glyph) + 2);
  const std::size_t at = hmtx_.offset + 4 * static_cast<std::size_t>(hmetric_count_) +
                         2 * static_cast<std::size_t>(glyph - hmetric_count_);
  return at + 2 <= hmtx_.offset + hmtx_.length ? r.i16(at) : 0;
}

std::int64_t Font::text_advance_units(std::string_view utf8) const {
  std::int64_t total = 0;
  for (char32_t c : utf8::decode(utf8)) total += advance_units(glyph_index(c));
  return total;
}

double Font::text_advance_px(std::string_view utf8, double size_px) const {
  return static_cast<double>(text_advance_units(utf8)) * size_px / units_per_em_;
}

double Font::line_height_px(double size_px) const {
  return static_cast<double>(ascender_ - descender_ + line_gap_) * size_px / units_per_em_;
}

double Font::ascender_px(double size_px) const {
  return static_cast<double>(ascender_) * size_px / units_per_em_;
}

GlyphOutline Font::outline(std::uint16_t glyph) const {
  GlyphOutline out;
  const double identity[6] = {1, 0, 0, 1, 0, 0};
  append_outline(glyph, 0, identity, out);
  return out;
}

void Font::append_outline(std::uint16_t glyph, int depth, const double xform[6],
                          GlyphOutline& out) const {
  if (glyph >= glyph_count_ || depth > 8) return;
  const Reader r(data_);
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  if (long_loca_) {
    start = r.u32(loca_.offset + 4 * static_cast<std::size_t>(glyph));
    end = r.u32(loca_.offset + 4 * static_cast<std::size_t>(glyph) + 4);
  } else {
    start = 2u * r.u16(loca_.offset + 2 * static_cast<std::size_t>(glyph));
    end = 2u * r.u16(loca_.offset + 2 * static_cast<std::size_t>(glyph) + 2);
  }
  if (end <= start) return;  // empty glyph (e.g. space)
  if (end > glyf_.length) malformed("glyph data outside glyf table");
  const std::size_t base = glyf_.offset + start;

  const auto apply = [xform](double x, double y) {
    return OutlinePoint{xform[0] * x + xform[2] * y + xform[4],
                        xform[1] * x + xform[3] * y + xform[5], true};
  };

  const int contour_count = r.i16(base);
  if (contour_count >= 0) {
    std::vector<int> end_points(static_cast<std::size_t>(contour_count));
    for (int i = 0; i < contour_count; ++i) end_points[i] = r.u16(base + 10 + 2 * i);
    if (contour_count == 0) return;
    const int point_count = end_points.back() + 1;
    std::size_t at = base + 10 + 2 * static_cast<std::size_t>(contour_count);
    at += 2 + r.u16(at);  // skip hinting instructions

    std::vector<std::uint8_t> flags;
    flags.reserve(point_count);
    while (static_cast<int>(flags.size()) < point_count) {
      const std::uint8_t f = r.u8(at++);
      flags.push_back(f);
      if (f & 8) {
        const int repeat = r.u8(at++);
        for (int k = 0; k < repeat && static_cast<int>(flags.size()) < point_count; ++k) {
          flags.push_back(f);
        }
      }
    }
    std::vector<int> xs(point_count);
    std::vector<int> ys(point_count);
    int v = 0;
    for (int i = 0; i < point_count; ++i) {
      const std::uint8_t f = flags[i];
      if (f & 2) {
        const int d = r.u8(at++);
        v += (f & 16) ? d : -d;
      } else if (!(f & 16)) {
        v += r.i16(at);
        at += 2;
      }
      xs[i] = v;
    }
    v = 0;
    for (int i = 0; i < point_count; ++i) {
      const std::uint8_t f = flags[i];
      if (f & 4) {
        const int d = r.u8(at++);
        v += (f & 32) ? d : -d;
      } else if (!(f & 32)) {
        v += r.i16(at);
        at += 2;
      }
      ys[i] = v;
    }
    int first = 0;
    for (int c = 0; c < contour_count; ++c) {
      const int last = end_points[c];
      if (last < first || last >= point_count) malformed("contour end points out of order");
      Contour contour;
      contour.reserve(static_cast<std::size_t>(last - first + 1));
      for (int i = first; i <= last; ++i) {
        OutlinePoint p = apply(xs[i], ys[i]);
        p.on_curve = (flags[i] & 1) != 0;
        contour.push_back(p);
      }
      out.contours.push_back(std::move(contour));
      first = last + 1;
    }
    return;
  }

  // Composite glyph.
  std::size_t at = base + 10;
  while (true) {
    const std::uint16_t flags = r.u16(at);
    const std::uint16_t component = r.u16(at + 2);
    at += 4;
    double dx = 0;
    double dy = 0;
    if (flags & 1) {
      if (flags & 2) {
        dx = r.i16(at);
        dy = r.i16(at + 2);
      }
      at += 4;
    } else {
      if (flags & 2) {
        dx = static_cast<std::int8_t>(r.u8(at));
        dy = static_cast<std::int8_t>(r.u8(at + 1));
      }
      at += 2;
    }
    double a = 1, b = 0, c = 0, d = 1;
    if (flags & 8) {
      a = d = r.f2dot14(at);
      at += 2;
    } else if (flags & 0x40) {
      a = r.f2dot14(at);
      d = r.f2dot14(at + 2);
      at += 4;
    } else if (flags & 0x80) {
      a = r.f2dot14(at);
      b = r.f2dot14(at + 2);
      c = r.f2dot14(at + 4);
      d = r.f2dot14(at + 6);
      at += 8;
    }
    // child maps (x,y) -> (a x + c y + dx, b x + d y + dy); compose with parent.
    const double child[6] = {
        xform[0] * a + xform[2] * b,  xform[1] * a + xform[3] * b,
        xform[0] * c + xform[2] * d,  xform[1] * c + xform[3] * d,
        xform[0] * dx + xform[2] * dy + xform[4], xform[1] * dx + xform[3] * dy + xform[5]};
    append_outline(component, depth + 1, child, out);
    if (!(flags & 0x20)) break;
  }
}

}  // namespace glyphkit
