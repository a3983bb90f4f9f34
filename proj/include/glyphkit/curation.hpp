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

// Dataset curation: filter OCR-annotated records by aesthetic score, border
// placement, text area, and box count, render a glyph map for every kept
// record, and summarize the kept set with unit-bin histograms.

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/ocr_record.hpp"

namespace glyphkit {

struct CurationConfig {
  double aesthetic_min = 4.5;
  double area_min_frac = 0.05;
  int max_boxes = 5;
  double border_margin_frac = 0.02;
};

/// Throws Error(OutOfRange) when a threshold breaks its invariant.
void check_config(const CurationConfig& config);

enum class RejectReason {
  NoBoxes,
  LowAesthetic,
  BorderOnly,
  SmallArea,
  TooManyBoxes,
  MalformedRecord,
};

std::string_view to_string(RejectReason reason);

/// Raw sum of shoelace areas over the image area; overlaps count twice.
double box_area_fraction(std::span<const OcrBox> boxes, int width, int height);

/// True iff there is at least one box and every box's bounding rectangle
/// reaches into the border band of thickness margin_frac * min(width, height).
bool all_boxes_on_border(std::span<const OcrBox> boxes, int width, int height,
                         double margin_frac);

/// First failing rule in the order NoBoxes, LowAesthetic, BorderOnly,
/// SmallArea, TooManyBoxes; nullopt means keep.
std::optional<RejectReason> filter_record(const OcrRecord& record, const CurationConfig& config);

struct KeptEntry {
  std::size_t seq = 0;  // position in the input stream
  std::string image_id;
  std::string glyph_path;  // relative to the output directory
  std::string caption;
  int chars = 0;  // non-whitespace recognized characters
  int words = 0;
  int boxes = 0;
};

struct RejectedEntry {
  std::size_t seq = 0;
  std::string image_id;  // empty when the line did not parse
  RejectReason reason = RejectReason::MalformedRecord;
  std::string detail;
};

struct DatasetStats {
  std::map<int, std::size_t> chars;
  std::map<int, std::size_t> words;
  std::map<int, std::size_t> boxes;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

struct DatasetManifest {
  std::vector<KeptEntry> kept;
  std::vector<RejectedEntry> rejected;
  DatasetStats stats;
};

DatasetStats compute_stats(std::span<const KeptEntry> kept);

struct ManifestOptions {
  /// When set, glyph PNGs are written under <output_dir>/glyphs/.
  std::optional<std::filesystem::path> output_dir;
  int threads = 1;  // 0 = OpenMP default
  int glyph_size = 512;
};

/// Curates a JSONL stream (one OcrRecord per line; blank lines ignored).
/// Lines that fail to parse are rejected as MalformedRecord.
DatasetManifest build_manifest(std::span<const std::string> lines, const CurationConfig& config,
                               const ManifestOptions& options = {});
DatasetManifest build_manifest(std::istream& lines, const CurationConfig& config,
                               const ManifestOptions& options = {});

/// Seeded shuffle of the kept list, then consecutive slices of the given
/// sizes. Throws InsufficientRecords.
std::vector<DatasetManifest> split_dataset(const DatasetManifest& manifest,
                                           std::span<const std::size_t> sizes, std::uint64_t seed);

nlohmann::json kept_to_json(const KeptEntry& entry);
nlohmann::json rejected_to_json(const RejectedEntry& entry);
nlohmann::json to_json(const DatasetStats& stats);

/// Writes manifest.jsonl, rejects.jsonl and stats.json into `dir`.
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& dir);

}  // namespace glyphkit
