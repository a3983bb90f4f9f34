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

// HTTP front end for the studio UI. Request handling is split from the
// transport so handlers can be exercised directly; `Service` binds them to
// an httplib server.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace httplib {
class Server;
}

namespace glyphkit {

struct ServiceConfig {
  std::vector<std::string> creative_templates;  // defaults when empty
  std::optional<std::filesystem::path> ui_dir;  // static assets for GET /
  int render_threads = 1;
};

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// POST /api/render: instruction object -> PNG. 400 on schema or range
/// errors (body names the box and field), 422 when validation reports
/// errors.
HttpReply handle_render(std::string_view body, const ServiceConfig& config);

/// POST /api/validate: instruction object -> ValidationReport; 422 when the
/// report carries errors.
HttpReply handle_validate(std::string_view body);

/// POST /api/eval: {"cases": [...], "predictions": [...]} -> report with
/// per-case results.
HttpReply handle_eval(std::string_view body);

/// GET /api/templates.
HttpReply handle_templates(const ServiceConfig& config);

/// GET / when no UI directory is configured.
HttpReply handle_index();

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds to host:port (port 0 picks a free one) and returns the port, or
  /// -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop() is called.
  bool listen();
  void stop();

 private:
  ServiceConfig config_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace glyphkit
