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

#include "glyphkit/bench.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glyphkit/error.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/random.hpp"
#include "glyphkit/renderer.hpp"
#include "glyphkit/utf8.hpp"

namespace glyphkit {

namespace {

[[noreturn]] void bad_entry(const std::string& what) {
  throw Error(ErrorCode::MalformedEntry, what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    out.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

// File-name-safe rendering of a word; letters outside ASCII are kept.
std::string filename_word(std::string_view word) {
  std::string out;
  for (char c : word) {
    const bool unsafe = c == '/' || c == '\\' || c == ':' || c == '*' || c == '?' || c == '"' ||
                        c == '<' || c == '>' || c == '|' || static_cast<unsigned char>(c) < 0x20;
    out.push_back(unsafe ? '_' : c);
  }
  return out;
}

}  // namespace

int bucket_index(std::int64_t rank) {
  if (rank <= 1000) return 0;
  if (rank <= 10000) return 1;
  if (rank <= 100000) return 2;
  return 3;
}

std::vector<WordRank> parse_frequency_list(std::string_view tsv) {
  std::vector<WordRank> out;
  const auto lines = lines_of(tsv);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const std::string where = "frequency list line " + std::to_string(i + 1);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      bad_entry(where + ": expected word<TAB>rank");
    }
    const std::string_view rank_text = trim(line.substr(tab + 1));
    std::int64_t rank = 0;
    const auto [end, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (ec != std::errc() || end != rank_text.data() + rank_text.size()) {
      bad_entry(where + ": rank is not an integer");
    }
    out.push_back({std::string(line.substr(0, tab)), rank});
  }
  return out;
}

std::array<FrequencyBucket, 4> build_buckets(std::span<const WordRank> freq_list) {
  std::array<FrequencyBucket, 4> buckets;
  for (std::size_t b = 0; b < buckets.size(); ++b) buckets[b].name = kBucketNames[b];
  std::set<std::string> seen_words;
  std::set<std::int64_t> seen_ranks;
  for (const WordRank& wr : freq_list) {
    const auto words = utf8::split_words(wr.word);
    if (words.size() != 1 || words.front() != wr.word) {
      bad_entry("entry '" + wr.word + "' is not a single word");
    }
    if (wr.rank <= 0) bad_entry("entry '" + wr.word + "' has a non-positive rank");
    if (!seen_words.insert(wr.word).second) bad_entry("duplicate word '" + wr.word + "'");
    if (!seen_ranks.insert(wr.rank).second) {
      bad_entry("duplicate rank " + std::to_string(wr.rank) + " for '" + wr.word + "'");
    }
    buckets[bucket_index(wr.rank)].words.push_back(wr);
  }
  for (FrequencyBucket& b : buckets) {
    std::sort(b.words.begin(), b.words.end(),
              [](const WordRank& a, const WordRank& c) { return a.rank < c.rank; });
  }
  return buckets;
}

std::vector<std::string> sample_words(const FrequencyBucket& bucket, std::size_t n,
                                      std::uint64_t seed) {
  if (n > bucket.words.size()) {
    throw Error(ErrorCode::BucketTooSmall,
                "bucket " + bucket.name + " has " + std::to_string(bucket.words.size()) +
                    " words, " + std::to_string(n) + " requested");
  }
  std::vector<std::size_t> idx(bucket.words.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
    out.push_back(bucket.words[idx[i]].word);
  }
  return out;
}

std::string_view to_string(BenchKind kind) {
  return kind == BenchKind::Simple ? "simple" : "creative";
}

std::string_view to_string(FontPreset preset) {
  switch (preset) {
    case FontPreset::Small: return "small";
    case FontPreset::Medium: return "medium";
    case FontPreset::Large: return "large";
  }
  return "medium";
}

BenchKind parse_bench_kind(std::string_view name) {
  if (name == "simple") return BenchKind::Simple;
  if (name == "creative") return BenchKind::Creative;
  bad_entry("unknown bench kind '" + std::string(name) + "'");
}

FontPreset parse_font_preset(std::string_view name) {
  if (name == "small") return FontPreset::Small;
  if (name == "medium") return FontPreset::Medium;
  if (name == "large") return FontPreset::Large;
  bad_entry("unknown font preset '" + std::string(name) + "'");
}

double preset_width(FontPreset preset) {
  switch (preset) {
    case FontPreset::Small: return 0.15;
    case FontPreset::Medium: return 0.30;
    case FontPreset::Large: return 0.60;
  }
  return 0.30;
}

std::vector<std::string> default_creative_templates() {
  return {"Little panda holding a sign that says \"<word>\".",
          "A photographer wears a t-shirt with the word \"<word>\" printed on it."};
}

std::vector<std::string> parse_templates(std::string_view text) {
  std::vector<std::string> out;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (line.find(kWordPlaceholder) == std::string_view::npos) {
      bad_entry("template line " + std::to_string(i + 1) + " lacks the <word> placeholder");
    }
    out.emplace_back(line);
  }
  if (out.empty()) throw Error(ErrorCode::EmptyTemplateFile, "template file has no templates");
  return out;
}

GlyphInstructionSet bench_instructions(const std::string& word, FontPreset preset) {
  const double w = preset_width(preset);
  GlyphInstructionSet set;
  TextBox box;
  box.text = word;
  box.width = w;
  box.x = (1.0 - w) / 2.0;
  box.y = kBenchBoxY;
  set.boxes.push_back(std::move(box));
  return set;
}

std::string fill_template(std::string_view tmpl, std::string_view word) {
  std::string out;
  std::size_t at = 0;
  while (true) {
    const std::size_t hit = tmpl.find(kWordPlaceholder, at);
    if (hit == std::string_view::npos) break;
    out.append(tmpl.substr(at, hit - at));
    out.append(word);
    at = hit + kWordPlaceholder.size();
  }
  out.append(tmpl.substr(at));
  return out;
}

std::vector<PromptCase> make_prompts(std::span<const BenchWord> words, BenchKind kind,
                                     std::span<const std::string> templates, std::uint64_t seed,
                                     FontPreset preset) {
  if (kind == BenchKind::Creative && templates.empty()) {
    throw Error(ErrorCode::EmptyTemplateFile, "creative benchmark needs at least one template");
  }
  Rng rng(seed);
  std::vector<PromptCase> cases;
  cases.reserve(words.size() * kReplicates);
  for (const BenchWord& w : words) {
    const GlyphInstructionSet set = bench_instructions(w.word, preset);
    for (int rep = 1; rep <= kReplicates; ++rep) {
      PromptCase c;
      c.word = w.word;
      c.bucket = w.bucket;
      c.replicate = rep;
      c.font_preset = preset;
      c.instructions = set;
      const std::string_view tmpl =
          kind == BenchKind::Simple ? kSimpleTemplate
                                    : std::string_view(templates[rng.below(templates.size())]);
      c.prompt = fill_template(tmpl, w.word);
      c.case_id = w.bucket + "_" + w.word + "_" + std::to_string(rep);
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

std::string glyph_path(const PromptCase& c) {
  return "glyphs/" + c.bucket + "_" + filename_word(c.word) + "_" + std::to_string(c.replicate) +
         ".png";
}

nlohmann::json to_json(const PromptCase& c) {
  return {{"case_id", c.case_id},
          {"word", c.word},
          {"bucket", c.bucket},
          {"prompt", c.prompt},
          {"replicate", c.replicate},
          {"font_preset", std::string(to_string(c.font_preset))},
          {"glyph_path", glyph_path(c)},
          {"instructions", to_json(c.instructions)}};
}

std::vector<PromptCase> build_bench(std::span<const WordRank> freq_list,
                                    std::span<const std::string> templates,
                                    const BenchConfig& config) {
  const auto buckets = build_buckets(freq_list);
  std::vector<BenchWord> words;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    for (std::string& w : sample_words(buckets[b], config.words_per_bucket, mix_seed(config.seed, b))) {
      words.push_back({std::move(w), buckets[b].name});
    }
  }
  return make_prompts(words, config.kind, templates, mix_seed(config.seed, 100), config.preset);
}

void emit_bench(std::span<const PromptCase> cases, const std::filesystem::path& out_dir,
                int threads) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "glyphs", ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (out_dir / "glyphs").string());

  std::string jsonl;
  for (const PromptCase& c : cases) jsonl += to_json(c).dump() + "\n";
  write_text_file(out_dir / "cases.jsonl", jsonl);

  const auto n = static_cast<std::ptrdiff_t>(cases.size());
  std::exception_ptr failure;
#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const PromptCase& c = cases[static_cast<std::size_t>(i)];
      const RenderResult r = render(c.instructions);
      write_file(out_dir / glyph_path(c), encode_png(r.image));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(glyphkit_bench_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace glyphkit
