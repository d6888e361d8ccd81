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

#pragma once

// HTTP API: POST /translate, /suggest, /complete; GET /health, /openapi.json.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wlac/completion.hpp"

namespace wlac {

class LanguageDetector {
 public:
  // Ships stopword lists for en, de, fr, es, it and nl.
  LanguageDetector();

  void set_stopwords(const std::string& lang, const std::vector<std::string>& words);
  const std::set<std::string>* stopwords(const std::string& lang) const;

 private:
  std::map<std::string, std::set<std::string>> stopwords_;
};

// "zh" if at least 30% of the letters are Han; otherwise the candidate whose
// stopword list overlaps most, ties going to `default_source`. Throws
// Error(kUnprocessable) for empty text or when no candidate matches.
std::string detect_language(std::string_view text, const LanguageDetector& detector,
                            std::span<const std::string> candidates, std::string_view default_source = {});

struct ServiceConfig {
  DecodeConfig suggest{1, 10, 10, 1.0, std::nullopt, 1, 64, std::nullopt, true};
  DecodeConfig complete{1, 10, 10, 1.0, std::nullopt, 5, 64, std::nullopt, true};
  int translate_beam_size = 1;
  int max_decode_len = 64;
  std::uint64_t seed = 0;
  std::int64_t first_id = 1;
  bool legacy_keys = false;  // also emit "compelection" next to "completion"
  std::string default_source;
};

struct Suggestion {
  std::string suggestion;
  std::string completion;
  double score = 0.0;
};

// First word of each continuation plus the remaining text, best score
// first, duplicate suggestions collapsed.
std::vector<Suggestion> make_suggestions(const LanguagePair& pair, std::span<const Hypothesis> hypotheses);

class Service {
 public:
  struct Reply {
    int status = 200;
    std::string body;
  };

  Service(std::vector<LanguagePair> pairs, ServiceConfig config, LanguageDetector detector = {});

  Reply translate(std::string_view body);
  Reply suggest(std::string_view body);
  Reply complete(std::string_view body);
  Reply health() const;
  Reply openapi() const;

  std::vector<std::pair<std::string, std::string>> language_pairs() const;
  const ServiceConfig& config() const { return config_; }

 private:
  const LanguagePair& resolve(const std::string& source_language, const std::string& target_language,
                              std::string_view text, std::string& resolved_source) const;
  std::int64_t take_id() { return next_id_.fetch_add(1); }

  std::vector<LanguagePair> pairs_;
  ServiceConfig config_;
  LanguageDetector detector_;
  std::atomic<std::int64_t> next_id_;
};

// Thin cpp-httplib front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks serving requests until stop().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wlac
