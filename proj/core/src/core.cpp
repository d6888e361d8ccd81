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

#include "wlac/core.hpp"

#include <fstream>

#include "json.hpp"
#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

void WlacInstance::validate() const {
  if (typed.empty()) fail(ErrorKind::kInvalidArgument, "instance " + id + ": typed is empty");
  for (char32_t cp : utf8::decode(typed)) {
    if (utf8::is_space(cp)) {
      fail(ErrorKind::kInvalidArgument, "instance " + id + ": typed contains whitespace");
    }
  }
}

ContextCase classify_context(std::string_view left_context, std::string_view right_context) {
  const bool has_left = !utf8::trim(left_context).empty();
  const bool has_right = !utf8::trim(right_context).empty();
  if (has_left && has_right) return ContextCase::kBoth;
  if (has_left) return ContextCase::kLeftOnly;
  if (has_right) return ContextCase::kRightOnly;
  return ContextCase::kEmpty;
}

ContextCase classify_context(const WlacInstance& instance) {
  return classify_context(instance.left_context, instance.right_context);
}

std::string_view context_case_name(ContextCase c) {
  switch (c) {
    case ContextCase::kEmpty: return "EMPTY";
    case ContextCase::kRightOnly: return "RIGHT_ONLY";
    case ContextCase::kLeftOnly: return "LEFT_ONLY";
    case ContextCase::kBoth: return "BOTH";
  }
  return "EMPTY";
}

ContextCase parse_context_case(std::string_view name) {
  for (ContextCase c : {ContextCase::kEmpty, ContextCase::kRightOnly, ContextCase::kLeftOnly,
                        ContextCase::kBoth}) {
    if (context_case_name(c) == name) return c;
  }
  fail(ErrorKind::kInvalidArgument, "unknown context case: " + std::string(name));
}

void DecodeConfig::validate() const {
  if (beam_size < 1) fail(ErrorKind::kInvalidArgument, "beam_size must be >= 1");
  if (sampling_topk < 0) fail(ErrorKind::kInvalidArgument, "sampling_topk must be >= 0");
  if (num_hypotheses < 1) fail(ErrorKind::kInvalidArgument, "num_hypotheses must be >= 1");
  if (!(temperature > 0.0)) fail(ErrorKind::kInvalidArgument, "temperature must be > 0");
  if (temperature_max && !(*temperature_max >= temperature)) {
    fail(ErrorKind::kInvalidArgument, "temperature_max must be >= temperature");
  }
  if (max_runs < 1) fail(ErrorKind::kInvalidArgument, "max_runs must be >= 1");
  if (max_decode_len < 1) fail(ErrorKind::kInvalidArgument, "max_decode_len must be >= 1");
}

std::string to_json_line(const WlacInstance& instance) {
  nlohmann::ordered_json j;
  j["id"] = instance.id;
  j["source"] = instance.source;
  j["left_context"] = instance.left_context;
  j["right_context"] = instance.right_context;
  j["typed"] = instance.typed;
  if (instance.gold) j["gold"] = *instance.gold;
  j["src_lang"] = instance.src_lang;
  j["tgt_lang"] = instance.tgt_lang;
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

WlacInstance parse_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed instance JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kInvalidArgument, "instance must be a JSON object");

  auto text = [&](const char* key, bool required) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      if (required) fail(ErrorKind::kInvalidArgument, std::string("instance missing key: ") + key);
      return {};
    }
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (!it->is_string()) fail(ErrorKind::kInvalidArgument, std::string("key is not a string: ") + key);
    return it->get<std::string>();
  };

  WlacInstance instance;
  instance.id = text("id", true);
  instance.source = text("source", true);
  instance.left_context = text("left_context", false);
  instance.right_context = text("right_context", false);
  instance.typed = text("typed", true);
  if (j.contains("gold") && !j["gold"].is_null()) instance.gold = text("gold", true);
  instance.src_lang = text("src_lang", false);
  instance.tgt_lang = text("tgt_lang", false);
  instance.validate();
  return instance;
}

std::vector<WlacInstance> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open dataset: " + path);
  std::vector<WlacInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (utf8::trim(line).empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const Error& e) {
      fail(e.kind(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_dataset(const std::string& path, const std::vector<WlacInstance>& instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write dataset: " + path);
  for (const auto& instance : instances) out << to_json_line(instance) << '\n';
  if (!out) fail(ErrorKind::kIo, "write failed: " + path);
}

}  // namespace wlac
