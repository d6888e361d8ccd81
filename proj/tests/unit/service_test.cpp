// Copyright 2026 The WLAC Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "api_fixture.hpp"
#include "test_support.hpp"
#include "wlac/error.hpp"
#include "wlac/service.hpp"

namespace wlac {
namespace {

using nlohmann::json;
using testing::read_text;

std::string golden(const std::string& name) { return read_text(std::string(WLAC_GOLDEN_DIR) + "/" + name); }

TEST(DetectLanguage, Examples) {
  const LanguageDetector det;
  const std::vector<std::string> langs{"en", "de", "fr", "zh"};
  EXPECT_EQ(detect_language("我们喜欢猫", det, langs), "zh");
  EXPECT_EQ(detect_language("der und die das", det, langs), "de");
  EXPECT_EQ(detect_language("le chat et la souris", det, langs), "fr");
  EXPECT_EQ(detect_language("ok 我们喜欢猫", det, langs), "zh");
  try {
    detect_language("", det, langs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnprocessable);
  }
  EXPECT_THROW(detect_language("xyzzy plugh", det, langs), Error);
  EXPECT_EQ(detect_language("xyzzy plugh", det, langs, "fr"), "fr");
  const std::vector<std::string> latin{"fr", "de"};
  EXPECT_THROW(detect_language("我们喜欢猫", det, latin), Error);
}

TEST(DetectLanguage, TiesGoToDefaultSource) {
  LanguageDetector det;
  det.set_stopwords("aa", {"zork"});
  det.set_stopwords("bb", {"zork"});
  const std::vector<std::string> langs{"aa", "bb"};
  EXPECT_EQ(detect_language("zork", det, langs, "bb"), "bb");
  EXPECT_EQ(detect_language("zork", det, langs, "aa"), "aa");
}

class GoldenTest : public ::testing::TestWithParam<bool> {};

TEST_P(GoldenTest, TranslateAndSuggestBytes) {
  const bool legacy = GetParam();
  Service service({testing::covid_pair()}, testing::golden_config(legacy));
  const auto t = service.translate(testing::kGoldenTranslateRequest);
  ASSERT_EQ(t.status, 200) << t.body;
  EXPECT_EQ(t.body + "\n", golden("translate.json"));
  const auto s = service.suggest(testing::kGoldenSuggestRequest);
  ASSERT_EQ(s.status, 200) << s.body;
  EXPECT_EQ(s.body + "\n", golden(legacy ? "suggest_legacy.json" : "suggest.json"));
}

INSTANTIATE_TEST_SUITE_P(LegacyKeys, GoldenTest, ::testing::Bool());

TEST(Service, SuggestReconstructsHypotheses) {
  Service service({testing::covid_pair()}, testing::golden_config(false));
  const auto body = json::parse(service.suggest(testing::kGoldenSuggestRequest).body);
  std::set<std::string> full{"The COVID-19 crisis has deepened already existing inequalities.",
                             "The COVID-19 pandemic has deepened already existing inequalities.",
                             "The crisis of COVID-19 has deepened already existing inequalities.",
                             "The impact of COVID-19 crisis has deepened already existing inequalities ."};
  for (const auto& item : body["result"]["translations"]) {
    const std::string text = "The " + item["suggestion"].get<std::string>() + " " + item["completion"].get<std::string>();
    EXPECT_TRUE(full.count(text)) << text;
  }
  // Empty prefix: the only first word is "The".
  const auto empty = json::parse(
      service.suggest(R"({"sentence": "x", "prefix": "", "source_language": "fr", "target_language": "en"})").body);
  ASSERT_EQ(empty["result"]["translations"].size(), 1u);
  EXPECT_EQ(empty["result"]["translations"][0]["suggestion"], "The");
}

TEST(Service, SuggestDedupKeepsBest) {
  const auto pair = testing::covid_pair();
  const auto& vocab = pair.model->target_vocab();
  auto tok = [&](const char* w) { return *vocab.find(std::string(kBoundaryMarker) + w); };
  std::vector<Hypothesis> hyps{{{tok("crisis"), tok("of")}, -2.0}, {{tok("crisis")}, -1.0}, {{tok("impact")}, -3.0}};
  const auto s = make_suggestions(pair, hyps);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].suggestion, "crisis");
  EXPECT_EQ(s[0].completion, "");
  EXPECT_EQ(s[1].suggestion, "impact");
}

TEST(Service, TranslateArityAndDeterminism) {
  Service service({testing::covid_pair()}, testing::golden_config(false));
  const auto two = json::parse(
      service.translate(R"({"sentences": ["a", "b"], "source_language": "fr", "target_language": "en"})").body);
  EXPECT_EQ(two["translations"].size(), 2u);
  std::string first;
  std::int64_t last_id = 0;
  for (int i = 0; i < 10; ++i) {
    auto body = json::parse(service.translate(testing::kGoldenTranslateRequest).body);
    EXPECT_GT(body["id"].get<std::int64_t>(), last_id);
    last_id = body["id"].get<std::int64_t>();
    const std::string t = body["translations"].dump();
    if (i == 0) first = t;
    EXPECT_EQ(t, first);
  }
}

TEST(Service, ErrorResponses) {
  Service service({testing::covid_pair()}, testing::golden_config(false));
  auto code = [](const Service::Reply& r) { return json::parse(r.body)["error"]["code"].get<std::string>(); };
  auto r = service.translate(R"({"sentences": [], "target_language": "en"})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(code(r), "invalid_argument");
  EXPECT_EQ(service.translate("{not json").status, 400);
  EXPECT_EQ(service.translate("[1]").status, 400);
  EXPECT_EQ(service.translate(R"({"sentences": [3], "target_language": "en"})").status, 400);
  r = service.translate(R"({"sentences": ["x"], "source_language": "fr", "target_language": "de"})");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(code(r), "not_found");
  EXPECT_EQ(service.translate(R"({"sentences": ["x"], "source_language": "it", "target_language": "en"})").status,
            404);
  EXPECT_EQ(service.translate(R"({"sentences": ["xyzzy"], "target_language": "en"})").status, 422);
  EXPECT_EQ(service.suggest(R"({"sentence": "", "target_language": "en"})").status, 400);
  EXPECT_EQ(service.complete(R"({"source": "x", "typed": "", "target_language": "en"})").status, 400);
  EXPECT_EQ(service.complete(R"({"source": "x", "target_language": "en"})").status, 400);
}

TEST(Service, CompleteSolvableAndExhausted) {
  auto cfg = testing::golden_config(false);
  cfg.complete.max_runs = 4;
  Service service({testing::covid_pair()}, cfg);
  auto body = json::parse(service.complete(
      R"({"source": "x", "left_context": "The", "typed": "cr", "source_language": "fr", "target_language": "en"})")
                              .body);
  EXPECT_EQ(body["word"], "crisis");
  EXPECT_EQ(body["runs_used"], 1);
  body = json::parse(
      service.complete(R"({"source": "x", "typed": "zz", "source_language": "fr", "target_language": "en"})").body);
  EXPECT_TRUE(body["word"].is_null());
  EXPECT_EQ(body["runs_used"], 4);
}

TEST(Service, HealthAndOpenApi) {
  Service service({testing::covid_pair()}, testing::golden_config(false));
  const auto health = json::parse(service.health().body);
  EXPECT_EQ(health["status"], "ok");
  EXPECT_EQ(health["language_pairs"], json::parse(R"([{"source": "fr", "target": "en"}])"));
  const auto doc = json::parse(service.openapi().body);
  EXPECT_EQ(doc["openapi"], "3.0.3");
  for (const char* p : {"/translate", "/suggest", "/complete", "/health"}) EXPECT_TRUE(doc["paths"].contains(p)) << p;
  EXPECT_TRUE(doc["components"]["schemas"].contains("SuggestResponse"));
}

class HttpFixture : public ::testing::Test {
 protected:
  void start(std::vector<LanguagePair> pairs, ServiceConfig cfg) {
    service_ = std::make_unique<Service>(std::move(pairs), std::move(cfg));
    server_ = std::make_unique<HttpServer>(*service_);
    port_ = server_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->run(); });
    server_->wait_until_ready();
  }
  void TearDown() override {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  std::unique_ptr<Service> service_;
  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpFixture, GoldenOverHttp) {
  start({testing::covid_pair()}, testing::golden_config(false));
  httplib::Client client("127.0.0.1", port_);
  auto res = client.Post("/translate", testing::kGoldenTranslateRequest, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body + "\n", golden("translate.json"));
  EXPECT_EQ(res->get_header_value("Content-Type").rfind("application/json", 0), 0u);
  res = client.Get("/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  res = client.Post("/translate", "{", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(HttpFixture, ConcurrentStormEchoesRequests) {
  std::vector<LanguagePair> pairs{testing::storm_pair("fr"), testing::storm_pair("de")};
  start(pairs, ServiceConfig{});
  // Sequential expectations from an independent service instance.
  Service reference(pairs, ServiceConfig{});
  struct Job {
    std::string endpoint, body, src, expected;
  };
  std::vector<Job> jobs;
  for (const char* lang : {"fr", "de"}) {
    for (const auto& ref : testing::storm_corpus(lang)) {
      json req{{"sentences", {ref.source}}, {"source_language", jobs.size() % 3 ? "auto" : lang},
               {"target_language", "en"}};
      const auto expected = json::parse(reference.translate(req.dump()).body)["translations"].dump();
      jobs.push_back({"/translate", req.dump(), lang, expected});
    }
  }
  while (jobs.size() < 80) {
    json req{{"sentence", "le chat dort"}, {"prefix", "the"}, {"source_language", "fr"}, {"target_language", "en"}};
    jobs.push_back({"/suggest", req.dump(), "fr", ""});
  }
  ASSERT_GE(jobs.size(), 64u);

  std::vector<std::string> failures(jobs.size());
  std::vector<std::int64_t> ids(jobs.size(), -1);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    threads.emplace_back([&, i] {
      httplib::Client client("127.0.0.1", port_);
      client.set_read_timeout(60, 0);
      auto res = client.Post(jobs[i].endpoint, jobs[i].body, "application/json");
      if (!res || res->status != 200) {
        failures[i] = res ? "status " + std::to_string(res->status) + " " + res->body : "transport " + httplib::to_string(res.error());
        return;
      }
      const auto body = json::parse(res->body, nullptr, false);
      if (body.is_discarded()) {
        failures[i] = "invalid JSON";
        return;
      }
      ids[i] = body.value("id", std::int64_t{-1});
      if (body["source_lang"] != jobs[i].src || body["target_lang"] != "en") failures[i] = "echo mismatch";
      if (jobs[i].endpoint == "/translate" && body["translations"].dump() != jobs[i].expected) {
        failures[i] = "translation mismatch: " + body["translations"].dump();
      }
      if (jobs[i].endpoint == "/suggest" && !body["result"]["translations"].is_array()) failures[i] = "bad suggest";
    });
  }
  for (auto& t : threads) t.join();
  for (std::size_t i = 0; i < jobs.size(); ++i) EXPECT_EQ(failures[i], "") << jobs[i].body;
  EXPECT_EQ(std::set<std::int64_t>(ids.begin(), ids.end()).size(), jobs.size());
}

TEST(StormPair, TranslatesTrainingSentences) {
  const auto pair = testing::storm_pair("fr");
  Service service({pair}, ServiceConfig{});
  const auto body = json::parse(service.translate(
      R"({"sentences": ["le chat dort", "le chien mange"], "source_language": "fr", "target_language": "en"})")
                                    .body);
  EXPECT_EQ(body["translations"], json::parse(R"(["the cat sleeps", "the dog eats"])"));
}

}  // namespace
}  // namespace wlac
