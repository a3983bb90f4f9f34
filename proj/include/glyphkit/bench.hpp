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

// Evaluation benchmark construction: word-frequency buckets, seeded word
// sampling, prompt cases with their glyph instructions, and emission of the
// case list plus one glyph image per case.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glyphkit/instruction.hpp"

namespace glyphkit {

struct WordRank {
  std::string word;
  std::int64_t rank = 0;
};

inline constexpr std::array<std::string_view, 4> kBucketNames = {"top1k", "1k_10k", "10k_100k",
                                                                 "100k_plus"};

struct FrequencyBucket {
  std::string name;
  std::vector<WordRank> words;  // ascending rank
};

/// Bucket index for a rank: <=1000, <=10000, <=100000, above.
int bucket_index(std::int64_t rank);

/// Parses `word<TAB>rank` lines; blank lines are skipped. Throws
/// MalformedEntry naming the line.
std::vector<WordRank> parse_frequency_list(std::string_view tsv);

/// Throws MalformedEntry for multi-word entries, non-positive or duplicate
/// ranks, and duplicate words.
std::array<FrequencyBucket, 4> build_buckets(std::span<const WordRank> freq_list);

/// Seeded uniform sample without replacement (partial Fisher-Yates over the
/// rank-ordered bucket). Throws BucketTooSmall.
std::vector<std::string> sample_words(const FrequencyBucket& bucket, std::size_t n,
                                      std::uint64_t seed);

enum class BenchKind { Simple, Creative };
enum class FontPreset { Small, Medium, Large };

std::string_view to_string(BenchKind kind);
std::string_view to_string(FontPreset preset);
BenchKind parse_bench_kind(std::string_view name);
FontPreset parse_font_preset(std::string_view name);

/// Box width as a fraction of the canvas width for each preset.
double preset_width(FontPreset preset);

inline constexpr std::string_view kSimpleTemplate = "A sign that says \"<word>\".";
inline constexpr std::string_view kWordPlaceholder = "<word>";
inline constexpr double kBenchBoxY = 0.45;
inline constexpr int kReplicates = 4;

/// The creative templates shipped by default.
std::vector<std::string> default_creative_templates();

/// One template per non-blank line, each containing `<word>`. Throws
/// EmptyTemplateFile when no template remains, MalformedEntry for a line
/// without the placeholder.
std::vector<std::string> parse_templates(std::string_view text);

struct BenchWord {
  std::string word;
  std::string bucket;
};

struct PromptCase {
  std::string case_id;
  std::string word;
  std::string bucket;
  std::string prompt;
  GlyphInstructionSet instructions;
  int replicate = 1;  // 1..4
  FontPreset font_preset = FontPreset::Medium;
};

/// The single-box instruction set used for every benchmark word.
GlyphInstructionSet bench_instructions(const std::string& word, FontPreset preset);

std::string fill_template(std::string_view tmpl, std::string_view word);

/// Four cases per word. Simple always uses kSimpleTemplate; Creative draws
/// a template per case from `templates` with a seeded uniform choice.
std::vector<PromptCase> make_prompts(std::span<const BenchWord> words, BenchKind kind,
                                     std::span<const std::string> templates, std::uint64_t seed,
                                     FontPreset preset);

/// Relative glyph path `glyphs/<bucket>_<word>_<replicate>.png`.
std::string glyph_path(const PromptCase& c);

nlohmann::json to_json(const PromptCase& c);

struct BenchConfig {
  BenchKind kind = BenchKind::Simple;
  FontPreset preset = FontPreset::Medium;
  std::size_t words_per_bucket = 100;
  std::uint64_t seed = 0;
};

/// Buckets, samples every bucket (seed mixed with the bucket index), and
/// builds the cases in bucket order.
std::vector<PromptCase> build_bench(std::span<const WordRank> freq_list,
                                    std::span<const std::string> templates,
                                    const BenchConfig& config);

/// Writes cases.jsonl and one glyph PNG per case under `out_dir`. Throws
/// IoFailure.
void emit_bench(std::span<const PromptCase> cases, const std::filesystem::path& out_dir,
                int threads = 1);

}  // namespace glyphkit
