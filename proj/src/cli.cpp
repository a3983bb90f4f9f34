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

#include "glyphkit/cli.hpp"

#include <algorithm>
#include <csignal>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "glyphkit/bench.hpp"
#include "glyphkit/curation.hpp"
#include "glyphkit/embedding.hpp"
#include "glyphkit/error.hpp"
#include "glyphkit/eval.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/instruction.hpp"
#include "glyphkit/renderer.hpp"
#include "glyphkit/service.hpp"

namespace glyphkit {

namespace {

using json = nlohmann::json;

// Reads an input file; failures surface as exit code 1.
struct InputError {
  std::string message;
};

std::string slurp(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw InputError{e.what()};
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return lines;
}

struct CurateFlags {
  CurationConfig config;
  int threads = 0;
};

void add_curation_flags(CLI::App* cmd, CurateFlags& f) {
  cmd->add_option("--aesthetic-min", f.config.aesthetic_min,
                  "reject records whose aesthetic score is below this")
      ->capture_default_str();
  cmd->add_option("--area-min", f.config.area_min_frac,
                  "minimum total box area as a fraction of the image")
      ->capture_default_str();
  cmd->add_option("--max-boxes", f.config.max_boxes, "maximum number of OCR boxes")
      ->capture_default_str();
  cmd->add_option("--border-margin", f.config.border_margin_frac,
                  "border band width as a fraction of the shorter image side")
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads, 0 for all cores")->capture_default_str();
}

std::map<std::string, std::size_t> reason_counts(const DatasetManifest& m) {
  std::map<std::string, std::size_t> counts;
  for (const RejectedEntry& r : m.rejected) ++counts[std::string(to_string(r.reason))];
  return counts;
}

int cmd_render(const std::string& input, const std::string& output, int threads,
               std::ostream& out, std::ostream& err) {
  const std::string raw = slurp(input);
  GlyphInstructionSet set;
  try {
    set = parse_instructions(raw);
  } catch (const Error& e) {
    err << input << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  const ValidationReport report = validate(set);
  for (const Issue& w : report.warnings) {
    err << "warning: box " << w.box << ": " << to_string(w.code) << ": " << w.message << "\n";
  }
  if (!report.ok()) {
    for (const Issue& e : report.errors) {
      err << "error: box " << e.box << ": " << to_string(e.code) << ": " << e.message << "\n";
    }
    return kExitInvalid;
  }
  const RenderResult r = render(set, {nullptr, threads, RasterBackend::Scanline});
  write_file(output, encode_png(r.image));
  out << "wrote " << output << " (" << r.image.width << "x" << r.image.height << ")\n";
  return kExitOk;
}

int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err) {
  const std::string raw = slurp(input);
  GlyphInstructionSet set;
  try {
    set = parse_instructions(raw);
  } catch (const Error& e) {
    err << input << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  const ValidationReport report = validate(set);
  out << to_json(report).dump(2) << "\n";
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_curate(const std::string& input, const std::string& out_dir, const CurateFlags& f,
               bool glyphs, std::ostream& out) {
  const auto lines = split_lines(slurp(input));
  ManifestOptions options;
  if (glyphs) options.output_dir = out_dir;
  options.threads = f.threads;
  const DatasetManifest m = build_manifest(lines, f.config, options);
  write_manifest(m, out_dir);
  out << "kept " << m.kept.size() << " rejected " << m.rejected.size() << "\n";
  for (const auto& [reason, count] : reason_counts(m)) out << "  " << reason << ": " << count << "\n";
  return kExitOk;
}

int cmd_stats(const std::string& input, const CurateFlags& f, std::ostream& out) {
  const auto lines = split_lines(slurp(input));
  ManifestOptions options;
  options.threads = f.threads;
  const DatasetManifest m = build_manifest(lines, f.config, options);
  json j = to_json(m.stats);
  j["kept"] = m.kept.size();
  j["rejected"] = m.rejected.size();
  j["reasons"] = reason_counts(m);
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct BenchFlags {
  std::string freq_path;
  std::string out_dir;
  std::string kind = "simple";
  std::string preset = "medium";
  std::string templates;
  std::size_t words_per_bucket = 100;
  std::uint64_t seed = 0;
  int threads = 0;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  BenchConfig config;
  config.kind = parse_bench_kind(f.kind);
  config.preset = parse_font_preset(f.preset);
  config.words_per_bucket = f.words_per_bucket;
  config.seed = f.seed;
  const auto freq = parse_frequency_list(slurp(f.freq_path));
  const auto templates =
      f.templates.empty() ? default_creative_templates() : parse_templates(slurp(f.templates));
  const auto cases = build_bench(freq, templates, config);
  emit_bench(cases, f.out_dir, f.threads);
  std::map<std::string, std::size_t> per_bucket;
  for (const PromptCase& c : cases) ++per_bucket[c.bucket];
  out << "wrote " << cases.size() << " cases to " << f.out_dir << "\n";
  for (const auto& [bucket, count] : per_bucket) out << "  " << bucket << ": " << count << "\n";
  return kExitOk;
}

struct EvalFlags {
  std::string cases;
  std::string predictions;
  std::string out;
  std::string image_emb;
  std::string text_emb;
  std::string real_features;
  std::string gen_features;
  int threads = 0;
};

// Wraps a data error with the file it came from.
template <typename F>
auto from_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  EvalInputs in;
  const std::string cases_text = slurp(f.cases);
  in.cases = from_file(f.cases, [&] { return parse_cases(cases_text); });
  if (!f.predictions.empty()) {
    const std::string pred_text = slurp(f.predictions);
    in.predictions = from_file(f.predictions, [&] { return parse_predictions(pred_text); });
  }
  const auto load = [](const std::string& path) -> std::optional<EmbeddingSet> {
    if (path.empty()) return std::nullopt;
    std::vector<std::uint8_t> bytes;
    try {
      bytes = read_file(path);
    } catch (const Error& e) {
      throw InputError{e.what()};
    }
    return from_file(path, [&] { return decode_embeddings(bytes); });
  };
  in.image_embeddings = load(f.image_emb);
  in.text_embeddings = load(f.text_emb);
  in.real_features = load(f.real_features);
  in.gen_features = load(f.gen_features);
  if (in.image_embeddings && in.image_embeddings->count != in.cases.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                f.image_emb + ": " + std::to_string(in.image_embeddings->count) + " rows for " +
                    std::to_string(in.cases.size()) + " cases");
  }
  if (in.text_embeddings && in.image_embeddings &&
      (in.text_embeddings->count != in.image_embeddings->count ||
       in.text_embeddings->dim != in.image_embeddings->dim)) {
    throw Error(ErrorCode::DimensionMismatch, f.text_emb + ": shape differs from " + f.image_emb);
  }
  if (in.real_features && in.gen_features && in.real_features->dim != in.gen_features->dim) {
    throw Error(ErrorCode::DimensionMismatch,
                f.gen_features + ": dimension differs from " + f.real_features);
  }

  const EvalOutcome outcome = evaluate_run(in, f.threads);
  json report = to_json(outcome.report);
  report["cases"] = json::array();
  for (const CaseResult& r : outcome.results) report["cases"].push_back(to_json(r));
  const std::string text = report.dump(2) + "\n";
  if (f.out.empty()) {
    out << text;
  } else {
    write_text_file(f.out, text);
    const BucketMetrics& o = outcome.report.overall;
    out << "cases " << o.cases << " acc " << o.acc << " acc_ci " << o.acc_ci << " ld " << o.ld
        << " missing " << outcome.report.missing_predictions << "\n";
  }
  return kExitOk;
}

Service* g_service = nullptr;

extern "C" void stop_on_signal(int) {
  if (g_service) g_service->stop();
}

int cmd_serve(const std::string& bind, const std::string& templates, const std::string& ui_dir,
              int threads, std::ostream& out, std::ostream& err) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    err << "--bind expects host:port\n";
    return kExitInvalid;
  }
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    err << "--bind port is not a number\n";
    return kExitInvalid;
  }
  ServiceConfig config;
  if (!templates.empty()) config.creative_templates = parse_templates(slurp(templates));
  if (!ui_dir.empty()) config.ui_dir = ui_dir;
  config.render_threads = threads;
  Service service(config);
  const int bound = service.bind(host, port);
  if (bound < 0) {
    err << "cannot bind " << bind << "\n";
    return kExitIo;
  }
  out << "listening on " << host << ":" << bound << std::endl;
  g_service = &service;
  std::signal(SIGINT, stop_on_signal);
  std::signal(SIGTERM, stop_on_signal);
  const bool ok = service.listen();
  g_service = nullptr;
  return ok ? kExitOk : kExitIo;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoFailure:
      return kExitIo;
    case ErrorCode::MalformedSyntax:
    case ErrorCode::SchemaViolation:
    case ErrorCode::MalformedRecord:
    case ErrorCode::MalformedEntry:
    case ErrorCode::EmptyTemplateFile:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::EmptyGroundTruth:
    case ErrorCode::ZeroVector:
    case ErrorCode::TooFewSamples:
      return kExitMalformed;
    default:
      return kExitInvalid;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"glyphkit: glyph rendering, dataset curation, benchmark construction and scoring"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  int threads = 0;

  auto* render = app.add_subcommand("render", "render an instruction file to a PNG");
  render->add_option("instructions", input, "instruction JSON file")->required();
  render->add_option("--out", output, "output PNG path")->required();
  render->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "print the validation report of an instruction file");
  validate_cmd->add_option("instructions", input, "instruction JSON file")->required();

  CurateFlags curate_flags;
  bool no_glyphs = false;
  auto* curate = app.add_subcommand("curate", "filter OCR records and build a dataset manifest");
  curate->add_option("records", input, "OCR record JSONL file")->required();
  curate->add_option("--out", output, "output directory")->required();
  curate->add_flag("--no-glyphs", no_glyphs, "skip rendering glyph images");
  add_curation_flags(curate, curate_flags);

  auto* stats = app.add_subcommand("stats", "print curation statistics without writing anything");
  stats->add_option("records", input, "OCR record JSONL file")->required();
  add_curation_flags(stats, curate_flags);

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "build an evaluation benchmark");
  bench->add_option("frequency_list", bench_flags.freq_path, "word<TAB>rank file")->required();
  bench->add_option("--out", bench_flags.out_dir, "output directory")->required();
  bench->add_option("--kind", bench_flags.kind, "simple or creative")
      ->check(CLI::IsMember({"simple", "creative"}))
      ->capture_default_str();
  bench->add_option("--font-preset", bench_flags.preset, "small, medium or large")
      ->check(CLI::IsMember({"small", "medium", "large"}))
      ->capture_default_str();
  bench->add_option("--templates", bench_flags.templates, "creative template file");
  bench->add_option("--words-per-bucket", bench_flags.words_per_bucket)->capture_default_str();
  bench->add_option("--seed", bench_flags.seed)->capture_default_str();
  bench->add_option("--threads", bench_flags.threads, "worker threads, 0 for all cores")
      ->capture_default_str();

  EvalFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "score OCR predictions against a benchmark");
  eval->add_option("cases", eval_flags.cases, "cases.jsonl from bench")->required();
  eval->add_option("--predictions", eval_flags.predictions, "OCR prediction JSONL");
  eval->add_option("--out", eval_flags.out, "report path (stdout when omitted)");
  eval->add_option("--image-embeddings", eval_flags.image_emb, "EMB1 file, one row per case");
  eval->add_option("--text-embeddings", eval_flags.text_emb, "EMB1 file, one row per case");
  eval->add_option("--real-features", eval_flags.real_features, "EMB1 reference features for FID");
  eval->add_option("--gen-features", eval_flags.gen_features, "EMB1 generated features for FID");
  eval->add_option("--threads", eval_flags.threads, "worker threads, 0 for all cores")
      ->capture_default_str();

  std::string bind = "127.0.0.1:8080";
  std::string templates;
  std::string ui_dir;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--templates", templates, "creative template file");
  serve->add_option("--ui-dir", ui_dir, "directory of static UI assets");
  serve->add_option("--threads", threads, "render threads, 0 for all cores")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitInvalid;
  }

  try {
    if (*render) return cmd_render(input, output, threads, out, err);
    if (*validate_cmd) return cmd_validate(input, out, err);
    if (*curate) return cmd_curate(input, output, curate_flags, !no_glyphs, out);
    if (*stats) return cmd_stats(input, curate_flags, out);
    if (*bench) return cmd_bench(bench_flags, out);
    if (*eval) return cmd_eval(eval_flags, out);
    if (*serve) return cmd_serve(bind, templates, ui_dir, threads, out, err);
  } catch (const InputError& e) {
    err << e.message << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalid;
}

}  // namespace glyphkit
