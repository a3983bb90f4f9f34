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

#include <future>
#include <thread>

#include <gtest/gtest.h>

#include "glyphkit/image_io.hpp"
#include "glyphkit/service.hpp"

#include "httplib.h"
#include "json.hpp"

namespace glyphkit {
namespace {

using nlohmann::json;

constexpr const char* kParseExample =
    R"({"canvas":{"width":512,"height":512},"boxes":[{"text":"Hello World","x":0.1,"y":0.2,"width":0.5}]})";

TEST(Handlers, RenderReturnsPng) {
  const HttpReply r = handle_render(kParseExample, ServiceConfig{});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content_type, "image/png");
  const std::vector<std::uint8_t> bytes(r.body.begin(), r.body.end());
  EXPECT_EQ(decode_png(bytes).width, 512);
}

TEST(Handlers, RenderRejectsOutOfRange) {
  const HttpReply r =
      handle_render(R"({"boxes":[{"text":"Hi","x":1.2,"y":0.0,"width":0.3}]})", ServiceConfig{});
  EXPECT_EQ(r.status, 400);
  const json j = json::parse(r.body);
  EXPECT_EQ(j["error"]["code"], "OutOfRange");
  EXPECT_EQ(j["error"]["box"], 0);
  EXPECT_EQ(j["error"]["field"], "x");
}

TEST(Handlers, RenderValidationErrorsAre422) {
  const HttpReply r =
      handle_render(R"({"boxes":[{"text":"a b","x":0.1,"y":0.1,"width":0.3,"rows":3}]})", ServiceConfig{});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(json::parse(r.body)["errors"][0]["code"], "RowsExceedWords");
  EXPECT_EQ(handle_render("{oops", ServiceConfig{}).status, 400);
}

TEST(Handlers, ValidateReportsOverlap) {
  const HttpReply r = handle_validate(
      R"({"boxes":[{"text":"a","x":0.1,"y":0.1,"width":0.5},{"text":"b","x":0.1,"y":0.1,"width":0.5}]})");
  EXPECT_EQ(r.status, 200);
  EXPECT_NE(r.body.find("Overlap"), std::string::npos);
}

TEST(Handlers, Eval) {
  const json bundle = {
      {"cases", {{{"case_id", "a"}, {"bucket", "top1k"}, {"word", "Hello"}},
                 {{"case_id", "b"}, {"bucket", "top1k"}, {"word", "World"}}}},
      {"predictions", {{{"case_id", "a"}, {"words", {{{"text", "HELLO"}}}}}}}};
  const HttpReply r = handle_eval(bundle.dump());
  ASSERT_EQ(r.status, 200);
  const json j = json::parse(r.body);
  EXPECT_EQ(j["overall"]["acc"], 0.0);
  EXPECT_EQ(j["overall"]["acc_ci"], 0.5);
  EXPECT_EQ(j["missing_predictions"], 1);
  EXPECT_EQ(j["cases"].size(), 2u);
  EXPECT_EQ(handle_eval("[]").status, 400);
  EXPECT_EQ(handle_eval("{").status, 400);
}

TEST(Handlers, TemplatesAndIndex) {
  const json j = json::parse(handle_templates(ServiceConfig{}).body);
  EXPECT_EQ(j["simple"], "A sign that says \"<word>\".");
  EXPECT_EQ(j["creative"].size(), 2u);
  ServiceConfig custom;
  custom.creative_templates = {"x <word>"};
  EXPECT_EQ(json::parse(handle_templates(custom).body)["creative"].size(), 1u);
  const HttpReply index = handle_index();
  EXPECT_EQ(index.status, 200);
  EXPECT_NE(index.content_type.find("text/html"), std::string::npos);
}

class LiveService : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<Service>(ServiceConfig{});
    port_ = service_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->listen(); });
  }
  void TearDown() override {
    service_->stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  std::unique_ptr<Service> service_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(LiveService, Endpoints) {
  auto c = client();
  auto r = c.Post("/api/render", kParseExample, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "image/png");

  r = c.Post("/api/render", R"({"boxes":[{"text":"Hi","x":1.2,"y":0.0,"width":0.3}]})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);

  r = c.Post("/api/validate", kParseExample, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);

  r = c.Get("/api/templates");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);

  r = c.Get("/");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);

  r = c.Post("/api/eval", R"({"cases":[{"case_id":"a","bucket":"b","word":"x"}]})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
}

// Concurrent request streams get the same answers as sequential ones.
TEST_F(LiveService, StatelessUnderConcurrency) {
  const std::vector<std::string> bodies = {
      kParseExample,
      R"({"boxes":[{"text":"Second","x":0.3,"y":0.5,"width":0.4,"yaw_deg":30}]})",
      R"({"boxes":[{"text":"third box here","x":0.1,"y":0.1,"width":0.8,"rows":2}]})"};
  std::vector<std::string> sequential;
  for (const auto& b : bodies) {
    auto r = client().Post("/api/render", b, "application/json");
    ASSERT_TRUE(r);
    sequential.push_back(r->body);
  }
  std::vector<std::future<std::vector<std::string>>> streams;
  for (int s = 0; s < 3; ++s) {
    streams.push_back(std::async(std::launch::async, [&, s] {
      std::vector<std::string> got;
      auto c = client();
      for (int k = 0; k < 4; ++k) {
        auto r = c.Post("/api/render", bodies[static_cast<std::size_t>((s + k) % 3)], "application/json");
        got.push_back(r ? r->body : std::string());
      }
      return got;
    }));
  }
  for (int s = 0; s < 3; ++s) {
    const auto got = streams[static_cast<std::size_t>(s)].get();
    for (int k = 0; k < 4; ++k) {
      EXPECT_EQ(got[static_cast<std::size_t>(k)], sequential[static_cast<std::size_t>((s + k) % 3)]);
    }
  }
}

}  // namespace
}  // namespace glyphkit
