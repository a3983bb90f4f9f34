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

// Acceptance checks. Each criterion prints one line:
//   PASS <name>: <detail>   or   FAIL <name>: <detail>
// Usage: glyphkit_acceptance [criterion...]; no arguments runs them all.
// The exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "glyphkit/bench.hpp"
#include "glyphkit/cli.hpp"
#include "glyphkit/curation.hpp"
#include "glyphkit/embedding.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/instruction.hpp"
#include "glyphkit/layout.hpp"
#include "glyphkit/metrics.hpp"
#include "glyphkit/random.hpp"
#include "glyphkit/renderer.hpp"
#include "glyphkit/utf8.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace glyphkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    std::string d = std::to_string(failures_) + " check(s) failed";
    for (const auto& n : notes_) d += "; " + n;
    return {false, d};
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("glyphkit_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// --- metric oracle suite ---------------------------------------------------

Outcome metric_oracles() {
  Checker c;
  const auto t0 = Clock::now();
  Rng rng(2024);
  static const std::vector<std::string> alphabet{"a", "b", "c", "d", "A", "é", "ß", "中", " "};
  const auto random_string = [&] {
    std::string s;
    const std::size_t n = rng.below(33);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.below(alphabet.size())];
    return s;
  };
  for (int i = 0; i < 10000; ++i) {
    const std::string a = random_string();
    const std::string b = random_string();
    const std::size_t got = levenshtein(a, b);
    const std::size_t want = oracle::edit_table(utf8::decode(a), utf8::decode(b));
    c.expect(got == want, "levenshtein('" + a + "','" + b + "')=" + std::to_string(got) +
                              " want " + std::to_string(want));
  }
  const std::vector<std::string> vocab{"sign", "Sign", "SIGN", "beer", "Beer", "free", "a", "the"};
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> g(1 + rng.below(8));
    std::vector<std::string> p(rng.below(9));
    for (auto& w : g) w = vocab[rng.below(vocab.size())];
    for (auto& w : p) w = vocab[rng.below(vocab.size())];
    const double n = static_cast<double>(g.size());
    const auto exact = [](const std::string& x, const std::string& y) { return x == y; };
    const auto folded = [](const std::string& x, const std::string& y) {
      return oracle::ascii_lower(x) == oracle::ascii_lower(y);
    };
    c.expect(word_error_rate(g, p, true) == oracle::word_table(g, p, exact) / n, "WER case-sensitive");
    c.expect(word_error_rate(g, p, false) == oracle::word_table(g, p, folded) / n, "WER case-insensitive");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime " + fmt(secs) + " s exceeds 5 s");
  return c.done("10000 Levenshtein pairs and 1000 WER pairs match the DP oracles in " + fmt(secs) + " s");
}

// --- FID -------------------------------------------------------------------

EmbeddingSet uniform_set(std::size_t n, std::size_t d, std::uint64_t seed, double shift, double scale) {
  Rng rng(seed);
  EmbeddingSet s{n, d, std::vector<float>(n * d)};
  for (float& v : s.data) v = static_cast<float>((rng.unit() * 2.0 - 1.0) * scale + shift);
  return s;
}

Outcome fid_correctness() {
  Checker c;
  const auto t0 = Clock::now();
  Rng rng(77);
  double worst_1d = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(200);
    const std::size_t m = 2 + rng.below(200);
    std::vector<double> xs, ys;
    EmbeddingSet a{n, 1, {}}, b{m, 1, {}};
    const double sa = 0.1 + 5 * rng.unit(), sb = 0.1 + 5 * rng.unit(), shift = 4 * rng.unit() - 2;
    for (std::size_t i = 0; i < n; ++i) {
      const float v = static_cast<float>((rng.unit() - 0.5) * sa);
      a.data.push_back(v);
      xs.push_back(v);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const float v = static_cast<float>((rng.unit() - 0.5) * sb + shift);
      b.data.push_back(v);
      ys.push_back(v);
    }
    const double err = std::abs(fid(a, b) - oracle::fid_1d(xs, ys));
    worst_1d = std::max(worst_1d, err);
    c.expect(err <= 1e-6, "1-D pair " + std::to_string(trial) + " off by " + fmt(err));
  }
  double worst_self = 0.0, worst_sym = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = uniform_set(300, 32, seed, 0.0, 1.0);
    const auto b = uniform_set(250, 32, seed + 100, 0.2, 1.5);
    const double self = std::abs(fid(a, a));
    const double sym = std::abs(fid(a, b) - fid(b, a));
    worst_self = std::max(worst_self, self);
    worst_sym = std::max(worst_sym, sym);
    c.expect(self <= 1e-9, "fid(A,A) = " + fmt(self));
    c.expect(sym <= 1e-9, "asymmetry " + fmt(sym));
    c.expect(fid(a, b) >= 0.0, "negative fid");
  }
  double worst_residual = 0.0;
  for (int d : {2, 8, 32, 64}) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd a(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = rng.unit() * 2 - 1;
      }
      // Include rank-deficient matrices.
      if (trial % 2) a.row(0).setZero();
      const Eigen::MatrixXd cm = a.transpose() * a;
      const Eigen::MatrixXd s = matrix_sqrt_psd(cm);
      const double rel = (s * s - cm).norm() / std::max(1.0, cm.norm());
      worst_residual = std::max(worst_residual, rel);
      c.expect(rel <= 1e-6, "sqrt residual d=" + std::to_string(d) + " " + fmt(rel));
    }
  }
  const double small_secs = seconds_since(t0);
  c.expect(small_secs < 30.0, "oracle checks took " + fmt(small_secs) + " s");

  const auto t1 = Clock::now();
  const auto real = uniform_set(10000, 2048, 1, 0.0, 1.0);
  const auto gen = uniform_set(10000, 2048, 2, 0.01, 1.1);
  const double big = fid(real, gen, {0, CovarianceBackend::Blocked});
  const double big_secs = seconds_since(t1);
  c.expect(std::isfinite(big) && big >= 0.0, "10000x2048 fid = " + fmt(big));
  c.expect(big_secs < 120.0, "10000x2048 fid took " + fmt(big_secs) + " s");
  return c.done("1-D max err " + fmt(worst_1d) + ", fid(A,A) max " + fmt(worst_self) +
                ", asymmetry max " + fmt(worst_sym) + ", sqrt residual max " + fmt(worst_residual) +
                " (" + fmt(small_secs) + " s); 10000x2048 fid " + fmt(big, 6) + " in " +
                fmt(big_secs) + " s");
}

// --- curation --------------------------------------------------------------

Outcome curation_fidelity() {
  Checker c;
  const DatasetManifest m = build_manifest(fixture::four_rule_records(), CurationConfig{});
  c.expect(m.kept.empty(), "fixture kept " + std::to_string(m.kept.size()));
  std::multiset<std::string> reasons;
  for (const auto& r : m.rejected) reasons.insert(std::string(to_string(r.reason)));
  for (const char* want : {"LowAesthetic", "BorderOnly", "SmallArea", "TooManyBoxes"}) {
    c.expect(reasons.count(want) == 1, std::string("reason ") + want);
  }
  c.expect(reasons.size() == 4, "fixture rejected " + std::to_string(reasons.size()));

  auto lines = fixture::synthetic_stream(1000, 31);
  const DatasetManifest base = build_manifest(lines, CurationConfig{}, {std::nullopt, 0, 512});
  const auto ids = [](const DatasetManifest& d) {
    std::set<std::string> s;
    for (const auto& k : d.kept) s.insert(k.image_id);
    return s;
  };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    rng.shuffle(std::span(lines));
    const DatasetManifest shuffled = build_manifest(lines, CurationConfig{}, {std::nullopt, 0, 512});
    c.expect(ids(shuffled) == ids(base), "kept ids differ after shuffle " + std::to_string(seed));
    c.expect(shuffled.stats == base.stats, "histograms differ after shuffle " + std::to_string(seed));
    c.expect(shuffled.kept.size() + shuffled.rejected.size() == lines.size(), "partition");
  }
  return c.done("fixture rejects one record per rule; 1000-record stream (" +
                std::to_string(base.kept.size()) + " kept) invariant under 5 shuffles");
}

// --- renderer --------------------------------------------------------------

Outcome renderer_determinism() {
  Checker c;
  std::size_t ink = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GlyphInstructionSet set = oracle::random_set(1000 + seed);
    const GlyphImage first = render(set, {nullptr, 1, RasterBackend::Scanline}).image;
    const GlyphImage second = render(set, {nullptr, 1, RasterBackend::Scanline}).image;
    const GlyphImage threaded = render(set, {nullptr, 4, RasterBackend::Scanline}).image;
    c.expect(encode_png(first) == encode_png(second), "rerun differs, seed " + std::to_string(seed));
    c.expect(first == threaded, "thread count changes output, seed " + std::to_string(seed));
    const std::size_t outside = oracle::uncontained_pixels(set, first);
    c.expect(outside == 0, std::to_string(outside) + " pixels outside boxes, seed " + std::to_string(seed));
    ink += measure_ink(first).count;
  }
  c.expect(ink > 0, "no ink rendered");
  std::string coherence;
  for (double yaw : {0.0, 90.0, 180.0, -90.0}) {
    const auto r = oracle::rotation_coherence(yaw);
    c.expect(r.checked > 100 && r.misses == 0,
             "yaw " + fmt(yaw) + ": " + std::to_string(r.misses) + " of " + std::to_string(r.checked));
    coherence += " " + fmt(yaw) + ":" + std::to_string(r.misses) + "/" + std::to_string(r.checked);
  }
  return c.done("50 sets identical across reruns and 1/4 threads, all ink within 2 px of boxes; "
                "rotation misses" + coherence);
}

// --- benchmark shape -------------------------------------------------------

std::map<std::string, std::vector<std::uint8_t>> snapshot(const fs::path& dir) {
  std::map<std::string, std::vector<std::uint8_t>> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_file(e.path());
  }
  return files;
}

Outcome benchmark_shape() {
  Checker c;
  const fs::path root = scratch("bench");
  write_text_file(root / "freq.tsv", fixture::frequency_tsv(fixture::frequency_list()));
  std::ostringstream out, err;
  for (const char* dir : {"a", "b"}) {
    const int rc = run_cli({"bench", (root / "freq.tsv").string(), "--out", (root / dir).string()}, out, err);
    c.expect(rc == 0, "bench exit " + std::to_string(rc) + ": " + err.str());
  }
  std::size_t cases = 0;
  std::map<std::string, std::size_t> buckets;
  std::size_t validation_errors = 0;
  std::istringstream in(read_text_file(root / "a" / "cases.jsonl"));
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    ++cases;
    ++buckets[j["bucket"].get<std::string>()];
    validation_errors += validate(instructions_from_json(j["instructions"])).errors.size();
    c.expect(fs::exists(root / "a" / j["glyph_path"].get<std::string>()), "missing glyph");
  }
  c.expect(cases == 1600, "case count " + std::to_string(cases));
  c.expect(buckets.size() == 4, "bucket count " + std::to_string(buckets.size()));
  for (const auto& [name, n] : buckets) c.expect(n == 400, name + " has " + std::to_string(n));
  c.expect(validation_errors == 0, std::to_string(validation_errors) + " validation errors");
  const auto a = snapshot(root / "a");
  const auto b = snapshot(root / "b");
  c.expect(a.size() == 1601, "file count " + std::to_string(a.size()));
  c.expect(a == b, "reruns differ");
  fs::remove_all(root);
  return c.done("1600 cases (4 buckets x 100 words x 4 replicates), 0 validation errors, "
                "rerun byte-identical across " + std::to_string(a.size()) + " files");
}

// --- end-to-end ------------------------------------------------------------

Outcome end_to_end() {
  Checker c;
  const fs::path root = scratch("e2e");
  write_text_file(root / "freq.tsv", fixture::frequency_tsv(fixture::frequency_list(9)));
  std::ostringstream out, err;
  c.expect(run_cli({"bench", (root / "freq.tsv").string(), "--out", (root / "bench").string(),
                    "--words-per-bucket", "25", "--seed", "3"},
                   out, err) == 0,
           "bench failed: " + err.str());

  std::string perfect, upper;
  std::map<std::string, std::pair<double, double>> length_sums;  // bucket -> (sum, count)
  std::istringstream in(read_text_file(root / "bench" / "cases.jsonl"));
  const auto quad = fixture::quad_json(0, 0, 10, 10);
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    const std::string word = j["word"];
    std::string up = word;
    for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    perfect += nlohmann::json{{"case_id", j["case_id"]}, {"words", {{{"text", word}, {"quad", quad}}}}}.dump() + "\n";
    upper += nlohmann::json{{"case_id", j["case_id"]}, {"words", {{{"text", up}, {"quad", quad}}}}}.dump() + "\n";
    auto& [sum, count] = length_sums[j["bucket"].get<std::string>()];
    sum += static_cast<double>(utf8::length(word));
    count += 1;
  }
  double mean_len = 0.0;
  for (const auto& [bucket, sc] : length_sums) mean_len += sc.first / sc.second;
  mean_len /= static_cast<double>(length_sums.size());
  write_text_file(root / "perfect.jsonl", perfect);
  write_text_file(root / "upper.jsonl", upper);
  write_text_file(root / "empty.jsonl", "");

  const auto score = [&](const std::string& preds) {
    std::ostringstream o, e;
    const int rc = run_cli({"eval", (root / "bench" / "cases.jsonl").string(), "--predictions",
                            (root / preds).string()},
                           o, e);
    c.expect(rc == 0, "eval " + preds + " exit " + std::to_string(rc) + ": " + e.str());
    return rc == 0 ? nlohmann::json::parse(o.str())["overall"] : nlohmann::json::object();
  };
  const auto p = score("perfect.jsonl");
  const auto u = score("upper.jsonl");
  const auto z = score("empty.jsonl");
  c.expect(p.value("acc", -1.0) == 1.0 && p.value("acc_ci", -1.0) == 1.0 && p.value("ld", -1.0) == 0.0,
           "perfect oracle " + p.dump());
  c.expect(u.value("acc", -1.0) == 0.0 && u.value("acc_ci", -1.0) == 1.0, "uppercase oracle " + u.dump());
  c.expect(z.value("acc", -1.0) == 0.0 && z.value("acc_ci", -1.0) == 0.0 &&
               std::abs(z.value("ld", -1.0) - mean_len) < 1e-9,
           "empty oracle " + z.dump() + " want ld " + fmt(mean_len, 10));
  fs::remove_all(root);
  return c.done("perfect Acc=Acc^=1 LD=0; uppercase Acc=0 Acc^=1 (LD " + fmt(u.value("ld", -1.0)) +
                "); empty Acc=Acc^=0 LD=" + fmt(z.value("ld", -1.0), 6) + " = mean word length");
}

// --- split_rows ------------------------------------------------------------

Outcome split_rows_optimality() {
  Checker c;
  Rng rng(4242);
  static const std::vector<std::string> pieces{"a", "bb", "ccc", "dddd", "é", "ßß", "中文", "xyzzy",
                                               "longerword"};
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<std::string> words;
    std::string text;
    for (int i = 0; i < n; ++i) {
      words.push_back(pieces[rng.below(pieces.size())]);
      text += words.back() + (rng.below(3) == 0 ? "  " : " ");
    }
    const int rows = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto got = split_rows(text, rows);
    const auto want = oracle::brute_split(words, rows);
    c.expect(got.size() == static_cast<std::size_t>(rows), "row count");
    c.expect(oracle::longest(got) == oracle::longest(want), "not optimal: '" + text + "'");
    c.expect(got == want, "tie-break differs: '" + text + "'");
  }
  return c.done("500 inputs with up to 10 words match brute-force enumeration");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"metric_oracles", metric_oracles},
      {"fid_correctness", fid_correctness},
      {"curation_fidelity", curation_fidelity},
      {"renderer_determinism", renderer_determinism},
      {"benchmark_shape", benchmark_shape},
      {"end_to_end", end_to_end},
      {"split_rows_optimality", split_rows_optimality},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  bool all_pass = true;
  int ran = 0;
  for (const auto& [name, run] : criteria) {
    if (!selected.empty() && !selected.count(name)) continue;
    ++ran;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
