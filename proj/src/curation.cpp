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

#include "glyphkit/curation.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glyphkit/error.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/instruction.hpp"
#include "glyphkit/random.hpp"
#include "glyphkit/renderer.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

namespace {

using json = nlohmann::json;

std::string sanitize_id(std::string_view id) {
  std::string out;
  for (char c : id.substr(0, 80)) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    out.push_back(safe ? c : '_');
  }
  return out;
}

std::string glyph_path_for(std::size_t seq, std::string_view id) {
  char prefix[32];
  std::snprintf(prefix, sizeof prefix, "%06zu", seq);
  return "glyphs/" + std::string(prefix) + "_" + sanitize_id(id) + ".png";
}

KeptEntry summarize(const OcrRecord& rec, std::size_t seq) {
  KeptEntry e;
  e.seq = seq;
  e.image_id = rec.image_id;
  e.glyph_path = glyph_path_for(seq, rec.image_id);
  e.caption = rec.caption;
  e.boxes = static_cast<int>(rec.boxes.size());
  for (const OcrBox& b : rec.boxes) {
    for (char32_t c : utf8::decode(b.text)) e.chars += utf8::is_space(c) ? 0 : 1;
    e.words += static_cast<int>(utf8::split_words(b.text).size());
  }
  return e;
}

struct Outcome {
  std::optional<KeptEntry> kept;
  std::optional<RejectedEntry> rejected;
};

}  // namespace

void check_config(const CurationConfig& c) {
  if (!(c.aesthetic_min > 0.0)) throw Error(ErrorCode::OutOfRange, "aesthetic_min must be positive");
  if (!(c.area_min_frac > 0.0 && c.area_min_frac < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "area_min_frac must lie in (0, 1)");
  }
  if (c.max_boxes < 1) throw Error(ErrorCode::OutOfRange, "max_boxes must be positive");
  if (!(c.border_margin_frac > 0.0 && c.border_margin_frac < 0.5)) {
    throw Error(ErrorCode::OutOfRange, "border_margin_frac must lie in (0, 0.5)");
  }
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::NoBoxes: return "NoBoxes";
    case RejectReason::LowAesthetic: return "LowAesthetic";
    case RejectReason::BorderOnly: return "BorderOnly";
    case RejectReason::SmallArea: return "SmallArea";
    case RejectReason::TooManyBoxes: return "TooManyBoxes";
    case RejectReason::MalformedRecord: return "MalformedRecord";
  }
  return "Unknown";
}

double box_area_fraction(std::span<const OcrBox> boxes, int width, int height) {
  double total = 0.0;
  for (const OcrBox& b : boxes) total += shoelace_area(b.quad);
  return total / (static_cast<double>(width) * static_cast<double>(height));
}

bool all_boxes_on_border(std::span<const OcrBox> boxes, int width, int height,
                         double margin_frac) {
  if (boxes.empty()) return false;
  const double band = margin_frac * std::min(width, height);
  return std::all_of(boxes.begin(), boxes.end(), [&](const OcrBox& b) {
    const Rect r = bounding_rect(b.quad);
    return r.x <= band || r.y <= band || r.x + r.width >= width - band ||
           r.y + r.height >= height - band;
  });
}

std::optional<RejectReason> filter_record(const OcrRecord& record, const CurationConfig& config) {
  if (record.boxes.empty()) return RejectReason::NoBoxes;
  if (record.aesthetic < config.aesthetic_min) return RejectReason::LowAesthetic;
  if (all_boxes_on_border(record.boxes, record.width, record.height, config.border_margin_frac)) {
    return RejectReason::BorderOnly;
  }
  if (box_area_fraction(record.boxes, record.width, record.height) < config.area_min_frac) {
    return RejectReason::SmallArea;
  }
  if (static_cast<int>(record.boxes.size()) > config.max_boxes) return RejectReason::TooManyBoxes;
  return std::nullopt;
}

DatasetStats compute_stats(std::span<const KeptEntry> kept) {
  DatasetStats stats;
  for (const KeptEntry& e : kept) {
    ++stats.chars[e.chars];
    ++stats.words[e.words];
    ++stats.boxes[e.boxes];
  }
  return stats;
}

DatasetManifest build_manifest(std::span<const std::string> lines, const CurationConfig& config,
                               const ManifestOptions& options) {
  check_config(config);
  if (options.output_dir) std::filesystem::create_directories(*options.output_dir / "glyphs");

  // Blank lines are not records and do not consume a sequence number.
  std::vector<std::size_t> record_lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r\n") != std::string::npos) record_lines.push_back(i);
  }
  const auto n = static_cast<std::ptrdiff_t>(record_lines.size());
  std::vector<Outcome> outcomes(record_lines.size());
  std::exception_ptr failure;

#ifdef _OPENMP
  const int nthreads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto seq = static_cast<std::size_t>(i);
    Outcome& out = outcomes[seq];
    OcrRecord rec;
    try {
      rec = parse_ocr_record(lines[record_lines[seq]]);
    } catch (const Error& e) {
      out.rejected = RejectedEntry{seq, {}, RejectReason::MalformedRecord, e.what()};
      continue;
    }
    if (const auto reason = filter_record(rec, config)) {
      out.rejected = RejectedEntry{seq, rec.image_id, *reason, {}};
      continue;
    }
    KeptEntry entry = summarize(rec, seq);
    if (options.output_dir) {
      try {
        GlyphInstructionSet set = from_ocr_record(rec).set;
        set.canvas = {options.glyph_size, options.glyph_size};
        const RenderResult rendered = render(set);
        write_file(*options.output_dir / entry.glyph_path, encode_png(rendered.image));
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(glyphkit_curation_failure)
#endif
        if (!failure) failure = std::current_exception();
      }
    }
    out.kept = std::move(entry);
  }
  if (failure) std::rethrow_exception(failure);

  DatasetManifest manifest;
  for (Outcome& o : outcomes) {
    if (o.kept) manifest.kept.push_back(std::move(*o.kept));
    if (o.rejected) manifest.rejected.push_back(std::move(*o.rejected));
  }
  manifest.stats = compute_stats(manifest.kept);
  return manifest;
}

DatasetManifest build_manifest(std::istream& in, const CurationConfig& config,
                               const ManifestOptions& options) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return build_manifest(lines, config, options);
}

std::vector<DatasetManifest> split_dataset(const DatasetManifest& manifest,
                                           std::span<const std::size_t> sizes, std::uint64_t seed) {
  std::size_t total = 0;
  for (std::size_t s : sizes) total += s;
  if (total > manifest.kept.size()) {
    throw Error(ErrorCode::InsufficientRecords,
                "requested " + std::to_string(total) + " records but only " +
                    std::to_string(manifest.kept.size()) + " were kept");
  }
  std::vector<std::size_t> order(manifest.kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span(order));

  std::vector<DatasetManifest> splits;
  std::size_t at = 0;
  for (std::size_t s : sizes) {
    DatasetManifest part;
    for (std::size_t k = 0; k < s; ++k) part.kept.push_back(manifest.kept[order[at + k]]);
    at += s;
    part.stats = compute_stats(part.kept);
    splits.push_back(std::move(part));
  }
  return splits;
}

json kept_to_json(const KeptEntry& e) {
  return {{"image_id", e.image_id}, {"glyph_path", e.glyph_path}, {"caption", e.caption}};
}

json rejected_to_json(const RejectedEntry& e) {
  json j = {{"image_id", e.image_id}, {"reason", std::string(to_string(e.reason))}};
  if (e.reason == RejectReason::MalformedRecord) {
    j["image_id"] = nullptr;
    j["record"] = e.seq;
    j["detail"] = e.detail;
  }
  return j;
}

json to_json(const DatasetStats& stats) {
  const auto hist = [](const std::map<int, std::size_t>& h) {
    json out = json::object();
    for (const auto& [bin, count] : h) out[std::to_string(bin)] = count;
    return out;
  };
  return {{"chars", hist(stats.chars)}, {"words", hist(stats.words)}, {"boxes", hist(stats.boxes)}};
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string kept;
  for (const KeptEntry& e : manifest.kept) kept += kept_to_json(e).dump() + "\n";
  std::string rejected;
  for (const RejectedEntry& e : manifest.rejected) rejected += rejected_to_json(e).dump() + "\n";
  write_text_file(dir / "manifest.jsonl", kept);
  write_text_file(dir / "rejects.jsonl", rejected);
  write_text_file(dir / "stats.json", to_json(manifest.stats).dump(2) + "\n");
}

}  // namespace glyphkit
