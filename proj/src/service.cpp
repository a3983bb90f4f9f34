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

#include "glyphkit/service.hpp"

#include "glyphkit/bench.hpp"
#include "glyphkit/error.hpp"
#include "glyphkit/eval.hpp"
#include "glyphkit/image_io.hpp"
#include "glyphkit/instruction.hpp"
#include "glyphkit/renderer.hpp"

// After the Eigen-dependent headers: resolv.h, pulled in by httplib, defines
// a _res macro that breaks Eigen's product kernels.
#include "httplib.h"
#include "json.hpp"

namespace glyphkit {

namespace {

using json = nlohmann::json;

constexpr std::string_view kIndexPage = R"(<!doctype html>
<html>
<head><meta charset="utf-8"><title>glyphkit</title></head>
<body>
<h1>glyphkit</h1>
<p>The studio UI is not installed. Start the service with <code>--ui-dir</code>
pointing at its build output, or use the JSON API:</p>
<ul>
<li><code>POST /api/render</code></li>
<li><code>POST /api/validate</code></li>
<li><code>POST /api/eval</code></li>
<li><code>GET /api/templates</code></li>
</ul>
</body>
</html>
)";

HttpReply json_reply(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

json error_body(const Error& e) {
  json err = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (e.box_index()) err["box"] = *e.box_index();
  if (!e.field().empty()) err["field"] = e.field();
  return {{"error", err}};
}

HttpReply internal_error(const std::exception& e) {
  return json_reply(500, {{"error", {{"code", "Internal"}, {"message", e.what()}}}});
}

}  // namespace

HttpReply handle_render(std::string_view body, const ServiceConfig& config) {
  try {
    GlyphInstructionSet set;
    try {
      set = parse_instructions(body);
    } catch (const Error& e) {
      return json_reply(400, error_body(e));
    }
    const ValidationReport report = validate(set);
    if (!report.ok()) return json_reply(422, to_json(report));
    const RenderResult r = render(set, {nullptr, config.render_threads, RasterBackend::Scanline});
    const auto png = encode_png(r.image);
    return {200, "image/png", std::string(png.begin(), png.end())};
  } catch (const std::exception& e) {
    return internal_error(e);
  }
}

HttpReply handle_validate(std::string_view body) {
  try {
    GlyphInstructionSet set;
    try {
      set = parse_instructions(body);
    } catch (const Error& e) {
      return json_reply(400, error_body(e));
    }
    const ValidationReport report = validate(set);
    return json_reply(report.ok() ? 200 : 422, to_json(report));
  } catch (const std::exception& e) {
    return internal_error(e);
  }
}

HttpReply handle_eval(std::string_view body) {
  try {
    EvalInputs inputs;
    try {
      const json j = json::parse(body);
      if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array()) {
        throw Error(ErrorCode::SchemaViolation, "bundle needs a cases array");
      }
      for (const json& c : j["cases"]) inputs.cases.push_back(eval_case_from_json(c));
      if (j.contains("predictions")) inputs.predictions = predictions_from_json(j["predictions"]);
    } catch (const json::parse_error& e) {
      return json_reply(400, {{"error", {{"code", "MalformedSyntax"}, {"message", e.what()}}}});
    } catch (const Error& e) {
      return json_reply(400, error_body(e));
    }
    EvalOutcome out;
    try {
      out = evaluate_run(inputs, 1);
    } catch (const Error& e) {
      return json_reply(400, error_body(e));
    }
    json j = to_json(out.report);
    j["cases"] = json::array();
    for (const CaseResult& r : out.results) j["cases"].push_back(to_json(r));
    return json_reply(200, j);
  } catch (const std::exception& e) {
    return internal_error(e);
  }
}

HttpReply handle_templates(const ServiceConfig& config) {
  const auto creative = config.creative_templates.empty() ? default_creative_templates()
                                                          : config.creative_templates;
  return json_reply(200, {{"simple", std::string(kSimpleTemplate)},
                          {"creative", creative},
                          {"placeholder", std::string(kWordPlaceholder)}});
}

HttpReply handle_index() { return {200, "text/html; charset=utf-8", std::string(kIndexPage)}; }

Service::Service(ServiceConfig config)
    : config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  const auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server_->Post("/api/render", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_render(req.body, config_));
  });
  server_->Post("/api/validate", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_validate(req.body));
  });
  server_->Post("/api/eval", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_eval(req.body));
  });
  server_->Get("/api/templates", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_templates(config_));
  });
  if (config_.ui_dir) {
    server_->set_mount_point("/", config_.ui_dir->string());
  } else {
    server_->Get("/", [send](const httplib::Request&, httplib::Response& res) {
      send(res, handle_index());
    });
  }
}

Service::~Service() = default;

int Service::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

}  // namespace glyphkit
