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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "glyphkit/renderer.hpp"

namespace glyphkit {

/// 8-bit grayscale PNG, no interlacing, filter type 0 on every row, fixed
/// zlib level so identical images give identical bytes.
std::vector<std::uint8_t> encode_png(const GlyphImage& image);

/// Decodes the subset of PNG written by encode_png (8-bit grayscale, any
/// standard filter). Throws Error(IoFailure) for anything else.
GlyphImage decode_png(std::span<const std::uint8_t> bytes);

/// Raw pipeline format: width u32 LE, height u32 LE, then width*height bytes.
std::vector<std::uint8_t> encode_raw(const GlyphImage& image);
GlyphImage decode_raw(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace glyphkit
