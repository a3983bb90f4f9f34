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

#include "glyphkit/image_io.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include <zlib.h>

#include "glyphkit/error.hpp"

namespace glyphkit {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32_be(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               std::span<const std::uint8_t> data) {
  put_u32_be(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(0L, out.data() + type_at, static_cast<uInt>(4 + data.size()));
  put_u32_be(out, static_cast<std::uint32_t>(crc));
}

[[noreturn]] void bad_png(const std::string& what) {
  throw Error(ErrorCode::IoFailure, "unsupported or corrupt PNG: " + what);
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const GlyphImage& image) {
  const auto w = static_cast<std::size_t>(image.width);
  const auto h = static_cast<std::size_t>(image.height);
  std::vector<std::uint8_t> scanlines;
  scanlines.reserve((w + 1) * h);
  for (std::size_t y = 0; y < h; ++y) {
    scanlines.push_back(0);
    const auto row = image.pixels.begin() + static_cast<std::ptrdiff_t>(y * w);
    scanlines.insert(scanlines.end(), row, row + static_cast<std::ptrdiff_t>(w));
  }
  uLongf packed_size = compressBound(static_cast<uLong>(scanlines.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, scanlines.data(),
                static_cast<uLong>(scanlines.size()), 6) != Z_OK) {
    throw Error(ErrorCode::IoFailure, "zlib compression failed");
  }
  packed.resize(packed_size);

  std::vector<std::uint8_t> out(std::begin(kPngSignature), std::end(kPngSignature));
  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(w));
  put_u32_be(ihdr, static_cast<std::uint32_t>(h));
  ihdr.insert(ihdr.end(), {8, 0, 0, 0, 0});  // depth 8, grayscale, deflate, filter 0, no interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", {});
  return out;
}

GlyphImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0) bad_png("signature");
  std::size_t at = 8;
  std::uint32_t w = 0;
  std::uint32_t h = 0;
  std::vector<std::uint8_t> packed;
  bool seen_header = false;
  while (at + 12 <= bytes.size()) {
    const std::uint32_t len = get_u32_be(bytes.data() + at);
    if (len > bytes.size() - at - 12) bad_png("chunk length");
    const std::string type(reinterpret_cast<const char*>(bytes.data() + at + 4), 4);
    const std::uint8_t* data = bytes.data() + at + 8;
    if (type == "IHDR") {
      if (len != 13) bad_png("IHDR size");
      w = get_u32_be(data);
      h = get_u32_be(data + 4);
      if (data[8] != 8 || data[9] != 0 || data[12] != 0) bad_png("only 8-bit grayscale, non-interlaced");
      seen_header = true;
    } else if (type == "IDAT") {
      packed.insert(packed.end(), data, data + len);
    } else if (type == "IEND") {
      break;
    }
    at += 12 + len;
  }
  if (!seen_header || w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16)) bad_png("header");

  std::vector<std::uint8_t> raw((static_cast<std::size_t>(w) + 1) * h);
  uLongf raw_size = static_cast<uLongf>(raw.size());
  if (uncompress(raw.data(), &raw_size, packed.data(), static_cast<uLong>(packed.size())) != Z_OK ||
      raw_size != raw.size()) {
    bad_png("image data");
  }

  GlyphImage img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t y = 0; y < h; ++y) {
    const std::uint8_t filter = raw[y * (w + 1)];
    const std::uint8_t* src = raw.data() + y * (w + 1) + 1;
    std::uint8_t* dst = img.pixels.data() + y * w;
    const std::uint8_t* up = y > 0 ? dst - w : nullptr;
    for (std::size_t x = 0; x < w; ++x) {
      const int a = x > 0 ? dst[x - 1] : 0;
      const int b = up ? up[x] : 0;
      const int c = (up && x > 0) ? up[x - 1] : 0;
      int v = src[x];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: bad_png("filter type");
      }
      dst[x] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_raw(const GlyphImage& image) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + image.pixels.size());
  for (std::uint32_t v : {static_cast<std::uint32_t>(image.width), static_cast<std::uint32_t>(image.height)}) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

GlyphImage decode_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw Error(ErrorCode::IoFailure, "raw image shorter than its header");
  std::uint32_t dims[2] = {0, 0};
  for (int d = 0; d < 2; ++d) {
    for (int k = 0; k < 4; ++k) dims[d] |= static_cast<std::uint32_t>(bytes[4 * d + k]) << (8 * k);
  }
  if (dims[0] == 0 || dims[1] == 0 || dims[0] > (1u << 16) || dims[1] > (1u << 16) ||
      bytes.size() - 8 != static_cast<std::size_t>(dims[0]) * dims[1]) {
    throw Error(ErrorCode::IoFailure, "raw image size does not match its header");
  }
  GlyphImage img(static_cast<int>(dims[0]), static_cast<int>(dims[1]));
  std::memcpy(img.pixels.data(), bytes.data() + 8, img.pixels.size());
  return img;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  return data;
}

std::string read_text_file(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> data = read_file(path);
  return {data.begin(), data.end()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace glyphkit
