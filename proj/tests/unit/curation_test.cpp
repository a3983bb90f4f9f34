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

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "glyphkit/curation.hpp"
#include "glyphkit/error.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/ocr_record.hpp"
#include "glyphkit/random.hpp"
#include "fixtures.hpp"

namespace glyphkit {
namespace {

OcrBox rect_box(double x0, double y0, double x1, double y1) {
  return {Quad{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}, "t", 0.9};
}

OcrRecord record(std::vector<OcrBox> boxes, double aesthetic = 5.0) {
  OcrRecord r;
  r.image_id = "r";
  r.width = 512;
  r.height = 512;
  r.aesthetic = aesthetic;
  r.boxes = std::move(boxes);
  return r;
}

TEST(BoxAreaFraction, Examples) {
  const std::vector<OcrBox> quarter{rect_box(0, 0, 256, 256)};
  EXPECT_DOUBLE_EQ(box_area_fraction(quarter, 512, 512), 0.25);
  EXPECT_EQ(box_area_fraction({}, 512, 512), 0.0);
  const std::vector<OcrBox> twice{rect_box(0, 0, 512, 512), rect_box(0, 0, 512, 512)};
  EXPECT_DOUBLE_EQ(box_area_fraction(twice, 512, 512), 2.0);
}

TEST(AllBoxesOnBorder, Examples) {
  const double m = 0.02;
  EXPECT_FALSE(all_boxes_on_border(std::vector{rect_box(204.8, 204.8, 307.2, 307.2)}, 512, 512, m));
  EXPECT_TRUE(all_boxes_on_border(std::vector{rect_box(100, 0, 200, 50)}, 512, 512, m));
  EXPECT_FALSE(all_boxes_on_border(
      std::vector{rect_box(204.8, 204.8, 307.2, 307.2), rect_box(100, 0, 200, 50)}, 512, 512, m));
  EXPECT_FALSE(all_boxes_on_border({}, 512, 512, m));
  // The band is 2% of the shorter side: 10.24 px here.
  EXPECT_TRUE(all_boxes_on_border(std::vector{rect_box(10.24, 100, 200, 200)}, 512, 512, m));
  EXPECT_FALSE(all_boxes_on_border(std::vector{rect_box(10.25, 100, 200, 200)}, 512, 512, m));
}

TEST(FilterRecord, Rules) {
  const CurationConfig c;
  const OcrBox centered = rect_box(150, 200, 362, 330);  // ~10.5% of the image
  EXPECT_EQ(filter_record(record({centered}, 4.4), c), RejectReason::LowAesthetic);
  EXPECT_EQ(filter_record(record({centered}, 4.5), c), std::nullopt);
  std::vector<OcrBox> six;
  for (int k = 0; k < 6; ++k) six.push_back(rect_box(100, 60 + 60 * k, 400, 100 + 60 * k));
  EXPECT_EQ(filter_record(record(six), c), RejectReason::TooManyBoxes);
  // 102.4 x 102.4 px is 4% of the image
  EXPECT_EQ(filter_record(record({rect_box(200, 200, 302.4, 302.4)}), c), RejectReason::SmallArea);
  EXPECT_EQ(filter_record(record({centered}, 5.0), c), std::nullopt);
  EXPECT_EQ(filter_record(record({}), c), RejectReason::NoBoxes);
}

TEST(FilterRecord, RuleOrderIsObservable) {
  // Fails both the aesthetic and the area rule; aesthetic is checked first.
  EXPECT_EQ(filter_record(record({rect_box(200, 200, 220, 220)}, 3.0), CurationConfig{}),
            RejectReason::LowAesthetic);
}

TEST(CheckConfig, RejectsBadThresholds) {
  EXPECT_NO_THROW(check_config(CurationConfig{}));
  EXPECT_THROW(check_config(CurationConfig{0.0, 0.05, 5, 0.02}), Error);
  EXPECT_THROW(check_config(CurationConfig{4.5, 1.0, 5, 0.02}), Error);
  EXPECT_THROW(check_config(CurationConfig{4.5, 0.05, 0, 0.02}), Error);
  EXPECT_THROW(check_config(CurationConfig{4.5, 0.05, 5, 0.5}), Error);
}

TEST(BuildManifest, FourRuleFixture) {
  const auto lines = fixture::four_rule_records();
  const DatasetManifest m = build_manifest(lines, CurationConfig{});
  EXPECT_TRUE(m.kept.empty());
  ASSERT_EQ(m.rejected.size(), 4u);
  std::multiset<RejectReason> reasons;
  for (const auto& r : m.rejected) reasons.insert(r.reason);
  for (RejectReason want : {RejectReason::LowAesthetic, RejectReason::BorderOnly,
                            RejectReason::SmallArea, RejectReason::TooManyBoxes}) {
    EXPECT_EQ(reasons.count(want), 1u) << to_string(want);
  }
}

TEST(BuildManifest, MaxBoxesOverrideKeepsRecord) {
  CurationConfig c;
  c.max_boxes = 10;
  const DatasetManifest m = build_manifest(fixture::four_rule_records(), c);
  ASSERT_EQ(m.kept.size(), 1u);
  EXPECT_EQ(m.kept[0].image_id, "too_many_boxes");
  EXPECT_EQ(m.stats.boxes.at(6), 1u);
}

TEST(BuildManifest, EmptyStream) {
  std::istringstream in("");
  const DatasetManifest m = build_manifest(in, CurationConfig{});
  EXPECT_TRUE(m.kept.empty());
  EXPECT_TRUE(m.rejected.empty());
  EXPECT_TRUE(m.stats.chars.empty());
  EXPECT_TRUE(m.stats.words.empty());
  EXPECT_TRUE(m.stats.boxes.empty());
}

TEST(BuildManifest, HistogramsCount) {
  using nlohmann::json;
  json three = json::array();
  json five = json::array();
  for (int k = 0; k < 3; ++k) three.push_back(fixture::box_json(100, 100 + 70 * k, 400, 160 + 70 * k, "ab cd"));
  for (int k = 0; k < 5; ++k) five.push_back(fixture::box_json(100, 50 + 70 * k, 400, 110 + 70 * k, "x"));
  const std::vector<std::string> lines{fixture::record_line("three", 5.0, three),
                                       fixture::record_line("five", 5.0, five)};
  const DatasetManifest m = build_manifest(lines, CurationConfig{});
  ASSERT_EQ(m.kept.size(), 2u);
  EXPECT_EQ(m.stats.boxes, (std::map<int, std::size_t>{{3, 1}, {5, 1}}));
  EXPECT_EQ(m.stats.words, (std::map<int, std::size_t>{{6, 1}, {5, 1}}));
  EXPECT_EQ(m.stats.chars, (std::map<int, std::size_t>{{12, 1}, {5, 1}}));
}

TEST(BuildManifest, MalformedLinesAreRejectedNotFatal) {
  const std::vector<std::string> lines{"not json", fixture::kept_line("good"), "",
                                       R"({"image_id":"x","width":-1})"};
  const DatasetManifest m = build_manifest(lines, CurationConfig{});
  EXPECT_EQ(m.kept.size(), 1u);
  ASSERT_EQ(m.rejected.size(), 2u);
  EXPECT_EQ(m.rejected[0].reason, RejectReason::MalformedRecord);
  EXPECT_FALSE(m.rejected[0].detail.empty());
  EXPECT_EQ(rejected_to_json(m.rejected[0])["image_id"], nullptr);
}

TEST(BuildManifest, PartitionAndShuffleInvariance) {
  auto lines = fixture::synthetic_stream(300, 11);
  const DatasetManifest a = build_manifest(lines, CurationConfig{}, {std::nullopt, 3, 512});
  EXPECT_EQ(a.kept.size() + a.rejected.size(), lines.size());
  Rng rng(12);
  rng.shuffle(std::span(lines));
  const DatasetManifest b = build_manifest(lines, CurationConfig{});
  const auto ids = [](const DatasetManifest& m) {
    std::set<std::string> s;
    for (const auto& k : m.kept) s.insert(k.image_id);
    return s;
  };
  const auto rejects = [](const DatasetManifest& m) {
    std::multiset<std::pair<std::string, int>> s;
    for (const auto& r : m.rejected) {
      if (r.reason != RejectReason::MalformedRecord) s.insert({r.image_id, static_cast<int>(r.reason)});
    }
    return s;
  };
  EXPECT_EQ(ids(a), ids(b));
  EXPECT_EQ(rejects(a), rejects(b));
  EXPECT_EQ(a.stats, b.stats);
}

TEST(BuildManifest, Monotone) {
  const auto lines = fixture::synthetic_stream(300, 21);
  std::size_t prev = lines.size() + 1;
  for (double a : {3.0, 4.0, 4.5, 5.0, 6.0}) {
    CurationConfig c;
    c.aesthetic_min = a;
    const std::size_t kept = build_manifest(lines, c).kept.size();
    EXPECT_LE(kept, prev);
    prev = kept;
  }
  prev = lines.size() + 1;
  for (int mb : {8, 5, 3, 1}) {
    CurationConfig c;
    c.max_boxes = mb;
    const std::size_t kept = build_manifest(lines, c).kept.size();
    EXPECT_LE(kept, prev);
    prev = kept;
  }
}

TEST(BuildManifest, WritesGlyphsAndFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "glyphkit_curation_test";
  std::filesystem::remove_all(dir);
  std::vector<std::string> lines{fixture::kept_line("img/one"), fixture::kept_line("two")};
  lines.push_back(fixture::four_rule_records()[0]);
  const DatasetManifest m = build_manifest(lines, CurationConfig{}, {dir, 2, 512});
  write_manifest(m, dir);
  ASSERT_EQ(m.kept.size(), 2u);
  for (const auto& k : m.kept) {
    const GlyphImage img = decode_png(read_file(dir / k.glyph_path));
    EXPECT_EQ(img.width, 512);
    EXPECT_GT(measure_ink(img).count, 0u);
  }
  EXPECT_EQ(m.kept[0].glyph_path.find('/', 7), std::string::npos);  // id sanitized
  const std::string manifest = read_text_file(dir / "manifest.jsonl");
  EXPECT_EQ(std::count(manifest.begin(), manifest.end(), '\n'), 2);
  const auto first = nlohmann::json::parse(manifest.substr(0, manifest.find('\n')));
  EXPECT_EQ(first["image_id"], "img/one");
  EXPECT_TRUE(first.contains("glyph_path"));
  EXPECT_TRUE(first.contains("caption"));
  const auto rejected = nlohmann::json::parse(read_text_file(dir / "rejects.jsonl"));
  EXPECT_EQ(rejected["reason"], "LowAesthetic");
  const auto stats = nlohmann::json::parse(read_text_file(dir / "stats.json"));
  EXPECT_EQ(stats["boxes"]["1"], 2);
  std::filesystem::remove_all(dir);
}

TEST(SplitDataset, DisjointAndDeterministic) {
  std::vector<std::string> lines;
  for (int i = 0; i < 100; ++i) lines.push_back(fixture::kept_line("k" + std::to_string(i)));
  const DatasetManifest m = build_manifest(lines, CurationConfig{});
  ASSERT_EQ(m.kept.size(), 100u);
  const std::vector<std::size_t> sizes{30, 30};
  const auto a = split_dataset(m, sizes, 7);
  const auto b = split_dataset(m, sizes, 7);
  const auto c = split_dataset(m, sizes, 8);
  const auto ids = [](const DatasetManifest& d) {
    std::vector<std::string> v;
    for (const auto& k : d.kept) v.push_back(k.image_id);
    return v;
  };
  EXPECT_EQ(ids(a[0]), ids(b[0]));
  EXPECT_EQ(ids(a[1]), ids(b[1]));
  EXPECT_NE(ids(a[0]), ids(c[0]));
  const auto first = ids(a[0]);
  const std::set<std::string> s0(first.begin(), first.end());
  for (const auto& id : ids(a[1])) EXPECT_EQ(s0.count(id), 0u);
  const std::vector<std::size_t> too_many{101};
  try {
    split_dataset(m, too_many, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientRecords);
  }
}

TEST(OcrRecordParse, ClampsQuadsAndValidates) {
  const auto r = parse_ocr_record(fixture::record_line(
      "c", 5.0, nlohmann::json::array({fixture::box_json(-10, -5, 600, 100)})));
  EXPECT_EQ(r.boxes[0].quad[0].x, 0.0);
  EXPECT_EQ(r.boxes[0].quad[0].y, 0.0);
  EXPECT_EQ(r.boxes[0].quad[1].x, 512.0);
  EXPECT_THROW(parse_ocr_record(R"({"image_id":"a","width":0,"height":10,"caption":"","aesthetic":5,"boxes":[]})"),
               Error);
  EXPECT_EQ(parse_ocr_record(to_json(r).dump()).boxes.size(), 1u);
}

}  // namespace
}  // namespace glyphkit
