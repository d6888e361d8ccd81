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

#include "wlac/service.hpp"

#include <algorithm>
#include <optional>

#define CPPHTTPLIB_LISTEN_BACKLOG 256
#include "httplib.h"
#include "json.hpp"
#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

using Json = nlohmann::ordered_json;

LanguageDetector::LanguageDetector() {
  set_stopwords("en", {"the", "a", "an", "and", "or", "of", "to", "in", "on", "is", "are", "was", "were", "it",
                       "that", "this", "with", "for", "as", "be", "by", "at", "from", "has", "have", "not", "but",
                       "he", "she", "they", "we", "you", "i", "his", "her", "their", "its", "which", "who"});
  set_stopwords("de", {"der", "die", "das", "und", "oder", "ein", "eine", "einen", "ist", "sind", "war", "nicht",
                       "mit", "von", "zu", "im", "in", "den", "dem", "des", "auf", "für", "sich", "auch", "es",
                       "ich", "sie", "er", "wir", "ihr", "aber", "als", "wie", "bei", "nach", "aus", "hat"});
  set_stopwords("fr", {"le", "la", "les", "un", "une", "des", "et", "ou", "de", "du", "est", "sont", "était",
                       "pas", "avec", "pour", "dans", "sur", "par", "que", "qui", "il", "elle", "ils", "nous",
                       "vous", "je", "ce", "cette", "au", "aux", "mais", "ne", "se", "a", "son", "sa", "ses"});
  set_stopwords("es", {"el", "la", "los", "las", "un", "una", "y", "o", "de", "del", "es", "son", "en", "con",
                       "por", "para", "que", "no", "se", "lo", "su", "sus", "al", "como", "pero", "más", "yo",
                       "él", "ella", "nosotros", "este", "esta", "está", "fue", "hay"});
  set_stopwords("it", {"il", "lo", "la", "gli", "le", "un", "una", "e", "o", "di", "del", "della", "è", "sono",
                       "in", "con", "per", "che", "non", "si", "al", "come", "ma", "io", "lui", "lei", "noi",
                       "questo", "questa", "nel", "nella", "da", "ha"});
  set_stopwords("nl", {"de", "het", "een", "en", "of", "van", "is", "zijn", "was", "niet", "met", "voor", "in",
                       "op", "dat", "die", "er", "ik", "je", "hij", "zij", "wij", "maar", "als", "bij", "naar",
                       "uit", "heeft", "ook", "aan", "om", "dit"});
}

void LanguageDetector::set_stopwords(const std::string& lang, const std::vector<std::string>& words) {
  stopwords_[lang] = std::set<std::string>(words.begin(), words.end());
}

const std::set<std::string>* LanguageDetector::stopwords(const std::string& lang) const {
  auto it = stopwords_.find(lang);
  return it == stopwords_.end() ? nullptr : &it->second;
}

std::string detect_language(std::string_view text, const LanguageDetector& detector,
                            std::span<const std::string> candidates, std::string_view default_source) {
  if (utf8::trim(text).empty()) fail(ErrorKind::kUnprocessable, "cannot detect the language of empty text");

  std::size_t letters = 0;
  std::size_t han = 0;
  for (char32_t cp : utf8::decode(text)) {
    if (!utf8::is_letter(cp)) continue;
    ++letters;
    if (utf8::is_han(cp)) ++han;
  }
  auto is_candidate = [&](std::string_view lang) {
    return std::find(candidates.begin(), candidates.end(), lang) != candidates.end();
  };
  if (letters > 0 && 10 * han >= 3 * letters) {
    for (const auto& c : candidates) {
      if (is_cjk_language(c)) return c;
    }
    fail(ErrorKind::kUnprocessable, "detected Chinese, but no Chinese source model is loaded");
  }

  std::vector<std::string> tokens;
  for (const auto& w : word_tokenize(text, "und")) tokens.push_back(utf8::to_lower(w));

  std::string best;
  std::size_t best_score = 0;
  for (const auto& lang : candidates) {
    const auto* words = detector.stopwords(lang);
    if (words == nullptr) continue;
    std::size_t score = 0;
    for (const auto& t : tokens) score += words->count(t);
    const bool better = score > best_score ||
                        (score == best_score && score > 0 && lang == default_source && best != default_source);
    if (better) {
      best = lang;
      best_score = score;
    }
  }
  if (best_score > 0) return best;
  if (!default_source.empty() && is_candidate(default_source)) return std::string(default_source);
  fail(ErrorKind::kUnprocessable, "could not detect the source language");
}

std::vector<Suggestion> make_suggestions(const LanguagePair& pair, std::span<const Hypothesis> hypotheses) {
  std::vector<const Hypothesis*> order;
  for (const auto& h : hypotheses) order.push_back(&h);
  std::stable_sort(order.begin(), order.end(), [](const Hypothesis* a, const Hypothesis* b) {
    return a->score > b->score;
  });

  std::vector<Suggestion> out;
  std::set<std::string> seen;
  for (const Hypothesis* h : order) {
    const std::string text(utf8::trim(pair.decode_target(h->tokens)));
    if (text.empty()) continue;
    const WordList words = pair.target_words(text);
    if (words.empty()) continue;
    std::string first = words.front();
    if (!utf8::starts_with(text, first)) first = utf8::split_whitespace(text).front();
    if (!seen.insert(first).second) continue;
    out.push_back({first, std::string(utf8::trim(std::string_view(text).substr(first.size()))), h->score});
  }
  return out;
}

namespace {

Service::Reply error_reply(int status, ErrorKind kind, const std::string& message) {
  Json j;
  j["error"]["code"] = error_code_name(kind);
  j["error"]["message"] = message;
  return {status, j.dump()};
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return 400;
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kUnprocessable: return 422;
    case ErrorKind::kIo:
    case ErrorKind::kInternal: return 500;
  }
  return 500;
}

nlohmann::json parse_body(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed JSON body: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kInvalidArgument, "request body must be a JSON object");
  return j;
}

std::string string_field(const nlohmann::json& j, const char* key, std::optional<std::string> fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (!fallback) fail(ErrorKind::kInvalidArgument, std::string("missing field: ") + key);
    return *fallback;
  }
  if (!it->is_string()) fail(ErrorKind::kInvalidArgument, std::string("field must be a string: ") + key);
  return it->get<std::string>();
}

template <typename F>
Service::Reply guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_reply(status_for(e.kind()), e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_reply(400, ErrorKind::kInvalidArgument, e.what());
  } catch (const std::exception& e) {
    return error_reply(500, ErrorKind::kInternal, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

}  // namespace

Service::Service(std::vector<LanguagePair> pairs, ServiceConfig config, LanguageDetector detector)
    : pairs_(std::move(pairs)), config_(std::move(config)), detector_(std::move(detector)), next_id_(config_.first_id) {
  for (const auto& p : pairs_) p.validate();
  config_.suggest.validate();
  config_.complete.validate();
}

std::vector<std::pair<std::string, std::string>> Service::language_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : pairs_) out.emplace_back(p.src_lang, p.tgt_lang);
  return out;
}

const LanguagePair& Service::resolve(const std::string& source_language, const std::string& target_language,
                                     std::string_view text, std::string& resolved_source) const {
  resolved_source = source_language;
  if (source_language.empty() || source_language == "auto") {
    std::vector<std::string> candidates;
    for (const auto& p : pairs_) {
      if (p.tgt_lang == target_language) candidates.push_back(p.src_lang);
    }
    if (candidates.empty()) fail(ErrorKind::kNotFound, "no model translates into '" + target_language + "'");
    resolved_source = detect_language(text, detector_, candidates, config_.default_source);
  }
  for (const auto& p : pairs_) {
    if (p.src_lang == resolved_source && p.tgt_lang == target_language) return p;
  }
  fail(ErrorKind::kNotFound, "no model for language pair " + resolved_source + "-" + target_language);
}

Service::Reply Service::translate(std::string_view body) {
  return guarded([&]() -> Reply {
    const auto req = parse_body(body);
    auto it = req.find("sentences");
    if (it == req.end() || !it->is_array() || it->empty()) {
      fail(ErrorKind::kInvalidArgument, "sentences must be a non-empty list");
    }
    std::vector<std::string> sentences;
    for (const auto& s : *it) {
      if (!s.is_string()) fail(ErrorKind::kInvalidArgument, "sentences must be strings");
      sentences.push_back(s.get<std::string>());
    }
    const std::string source_language = string_field(req, "source_language", "auto");
    const std::string target_language = string_field(req, "target_language", std::nullopt);
    std::string joined;
    for (const auto& s : sentences) joined += s + "\n";
    std::string src;
    const LanguagePair& pair = resolve(source_language, target_language, joined, src);

    const std::int64_t id = take_id();
    DecodeConfig cfg;
    cfg.beam_size = config_.translate_beam_size;
    cfg.sampling_topk = 0;
    cfg.num_hypotheses = 1;
    cfg.max_decode_len = config_.max_decode_len;
    RngState rng = RngState::derive(config_.seed, std::to_string(id));

    Json translations = Json::array();
    for (const auto& s : sentences) {
      const auto source = pair.encode_source(s);
      const auto hyps = decode_alternatives(*pair.model, source, {}, cfg, rng);
      translations.push_back(hyps.empty() ? std::string() : pair.decode_target(hyps.front().tokens));
    }
    Json out;
    out["id"] = id;
    out["source_lang"] = src;
    out["target_lang"] = target_language;
    out["translations"] = std::move(translations);
    return {200, dump(out)};
  });
}

Service::Reply Service::suggest(std::string_view body) {
  return guarded([&]() -> Reply {
    const auto req = parse_body(body);
    const std::string sentence = string_field(req, "sentence", std::nullopt);
    if (utf8::trim(sentence).empty()) fail(ErrorKind::kInvalidArgument, "sentence is empty");
    const std::string prefix = string_field(req, "prefix", std::string());
    const std::string source_language = string_field(req, "source_language", "auto");
    const std::string target_language = string_field(req, "target_language", std::nullopt);
    std::string src;
    const LanguagePair& pair = resolve(source_language, target_language, sentence, src);

    const std::int64_t id = take_id();
    RngState rng = RngState::derive(config_.seed, std::to_string(id));
    DecodeConfig cfg = config_.suggest;
    cfg.max_decode_len = config_.max_decode_len;
    const auto source = pair.encode_source(sentence);
    const auto forced = pair.encode_target(utf8::trim(prefix));
    const auto hyps = decode_alternatives(*pair.model, source, forced, cfg, rng);

    Json items = Json::array();
    for (const auto& s : make_suggestions(pair, hyps)) {
      Json item;
      item["suggestion"] = s.suggestion;
      item["completion"] = s.completion;
      if (config_.legacy_keys) item["compelection"] = s.completion;
      items.push_back(std::move(item));
    }
    Json out;
    out["id"] = id;
    out["source_lang"] = src;
    out["target_lang"] = target_language;
    out["result"]["translations"] = std::move(items);
    return {200, dump(out)};
  });
}

Service::Reply Service::complete(std::string_view body) {
  return guarded([&]() -> Reply {
    const auto req = parse_body(body);
    WlacInstance inst;
    inst.source = string_field(req, "source", std::nullopt);
    inst.left_context = string_field(req, "left_context", std::string());
    inst.right_context = string_field(req, "right_context", std::string());
    inst.typed = string_field(req, "typed", std::nullopt);
    const std::string source_language = string_field(req, "source_language", "auto");
    const std::string target_language = string_field(req, "target_language", std::nullopt);
    inst.validate();
    std::string src;
    const LanguagePair& pair = resolve(source_language, target_language, inst.source, src);

    const std::int64_t id = take_id();
    inst.id = std::to_string(id);
    inst.src_lang = src;
    inst.tgt_lang = target_language;
    DecodeConfig cfg = config_.complete;
    cfg.max_decode_len = config_.max_decode_len;
    RngState rng = RngState::derive(config_.seed, inst.id);
    const auto outcome = wlac::complete(pair, inst, cfg, rng);

    Json out;
    out["id"] = id;
    out["source_lang"] = src;
    out["target_lang"] = target_language;
    out["word"] = outcome.prediction ? Json(outcome.prediction->word) : Json(nullptr);
    out["runs_used"] = outcome.runs_used;
    return {200, dump(out)};
  });
}

Service::Reply Service::health() const {
  Json out;
  out["status"] = "ok";
  Json pairs = Json::array();
  for (const auto& [s, t] : language_pairs()) pairs.push_back(Json{{"source", s}, {"target", t}});
  out["language_pairs"] = std::move(pairs);
  return {200, dump(out)};
}

namespace {

Json openapi_document() {
  auto str = [] { return Json{{"type", "string"}}; };
  auto integer = [] { return Json{{"type", "integer"}}; };
  auto object = [](Json properties, std::vector<std::string> required) {
    Json j{{"type", "object"}, {"properties", std::move(properties)}};
    if (!required.empty()) j["required"] = required;
    return j;
  };
  auto lang = [] {
    return Json{{"type", "string"}, {"description", "language code, or \"auto\" to detect"}, {"default", "auto"}};
  };

  Json schemas;
  schemas["TranslateRequest"] = object(
      Json{{"sentences", Json{{"type", "array"}, {"items", str()}, {"minItems", 1}}},
           {"source_language", lang()},
           {"target_language", str()}},
      {"sentences", "target_language"});
  schemas["TranslateResponse"] = object(
      Json{{"id", integer()}, {"source_lang", str()}, {"target_lang", str()},
           {"translations", Json{{"type", "array"}, {"items", str()}}}},
      {"id", "source_lang", "target_lang", "translations"});
  schemas["SuggestRequest"] = object(
      Json{{"sentence", str()}, {"prefix", str()}, {"source_language", lang()}, {"target_language", str()}},
      {"sentence", "target_language"});
  schemas["Suggestion"] = object(Json{{"suggestion", str()}, {"completion", str()}}, {"suggestion", "completion"});
  schemas["SuggestResponse"] = object(
      Json{{"id", integer()}, {"source_lang", str()}, {"target_lang", str()},
           {"result", object(Json{{"translations", Json{{"type", "array"},
                                                         {"items", Json{{"$ref", "#/components/schemas/Suggestion"}}}}}},
                             {"translations"})}},
      {"id", "source_lang", "target_lang", "result"});
  schemas["CompleteRequest"] = object(
      Json{{"source", str()}, {"left_context", str()}, {"right_context", str()},
           {"typed", Json{{"type", "string"}, {"minLength", 1}}}, {"source_language", lang()},
           {"target_language", str()}},
      {"source", "typed", "target_language"});
  schemas["CompleteResponse"] = object(
      Json{{"id", integer()}, {"source_lang", str()}, {"target_lang", str()},
           {"word", Json{{"type", "string"}, {"nullable", true}}}, {"runs_used", integer()}},
      {"id", "source_lang", "target_lang", "word", "runs_used"});
  schemas["Error"] = object(
      Json{{"error", object(Json{{"code", str()}, {"message", str()}}, {"code", "message"})}}, {"error"});
  schemas["Health"] = object(
      Json{{"status", str()},
           {"language_pairs",
            Json{{"type", "array"}, {"items", object(Json{{"source", str()}, {"target", str()}}, {})}}}},
      {"status", "language_pairs"});

  auto ref = [](const std::string& name) { return Json{{"$ref", "#/components/schemas/" + name}}; };
  auto json_content = [&](const std::string& name) {
    return Json{{"application/json", Json{{"schema", ref(name)}}}};
  };
  auto post = [&](const std::string& summary, const std::string& req, const std::string& resp) {
    Json responses;
    responses["200"] = Json{{"description", "OK"}, {"content", json_content(resp)}};
    responses["400"] = Json{{"description", "Malformed request"}, {"content", json_content("Error")}};
    responses["404"] = Json{{"description", "Unknown language pair"}, {"content", json_content("Error")}};
    responses["422"] = Json{{"description", "Language could not be detected"}, {"content", json_content("Error")}};
    return Json{{"post", Json{{"summary", summary},
                              {"requestBody", Json{{"required", true}, {"content", json_content(req)}}},
                              {"responses", std::move(responses)}}}};
  };

  Json doc;
  doc["openapi"] = "3.0.3";
  doc["info"] = Json{{"title", "wlac"}, {"version", "0.1.0"}};
  doc["paths"]["/translate"] = post("Translate sentences", "TranslateRequest", "TranslateResponse");
  doc["paths"]["/suggest"] = post("Word suggestions with completions", "SuggestRequest", "SuggestResponse");
  doc["paths"]["/complete"] = post("Word-level auto-completion", "CompleteRequest", "CompleteResponse");
  doc["paths"]["/health"] =
      Json{{"get", Json{{"summary", "Loaded language pairs"},
                        {"responses", Json{{"200", Json{{"description", "OK"}, {"content", json_content("Health")}}}}}}}};
  doc["components"]["schemas"] = std::move(schemas);
  return doc;
}

}  // namespace

Service::Reply Service::openapi() const {
  static const std::string doc = dump(openapi_document());
  return {200, doc};
}

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  svr.new_task_queue = [] { return new httplib::ThreadPool(16); };
  // SO_REUSEPORT (the library default) would let a second server share a busy port.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  auto respond = [](httplib::Response& res, const Service::Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json; charset=utf-8");
  };
  Service* s = &service;
  svr.Post("/translate", [s, respond](const httplib::Request& req, httplib::Response& res) {
    respond(res, s->translate(req.body));
  });
  svr.Post("/suggest", [s, respond](const httplib::Request& req, httplib::Response& res) {
    respond(res, s->suggest(req.body));
  });
  svr.Post("/complete", [s, respond](const httplib::Request& req, httplib::Response& res) {
    respond(res, s->complete(req.body));
  });
  svr.Get("/health", [s, respond](const httplib::Request&, httplib::Response& res) { respond(res, s->health()); });
  svr.Get("/openapi.json", [s, respond](const httplib::Request&, httplib::Response& res) {
    respond(res, s->openapi());
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace wlac
