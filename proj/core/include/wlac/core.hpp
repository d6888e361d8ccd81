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

// Domain types shared by every module.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wlac {

using TokenId = std::int32_t;

// One word-level completion problem: translate `source`, and predict the
// target word that starts with `typed` and sits somewhere between
// `left_context` and `right_context` (not necessarily adjacent to either).
struct WlacInstance {
  std::string id;
  std::string source;
  std::string left_context;
  std::string right_context;
  std::string typed;
  std::optional<std::string> gold;
  std::string src_lang;
  std::string tgt_lang;

  // Throws Error(kInvalidArgument) when `typed` is empty or has whitespace.
  void validate() const;

  friend bool operator==(const WlacInstance&, const WlacInstance&) = default;
};

enum class ContextCase { kEmpty, kRightOnly, kLeftOnly, kBoth };

ContextCase classify_context(const WlacInstance& instance);
ContextCase classify_context(std::string_view left_context, std::string_view right_context);

std::string_view context_case_name(ContextCase c);
// Accepts the names produced by context_case_name ("EMPTY", "LEFT_ONLY", ...).
ContextCase parse_context_case(std::string_view name);

struct DecodeConfig {
  int beam_size = 1;
  int sampling_topk = 0;  // 0 disables sampling
  int num_hypotheses = 10;
  double temperature = 1.0;
  // When set, each completion run draws its temperature uniformly from
  // [temperature, temperature_max].
  std::optional<double> temperature_max;
  int max_runs = 5;
  int max_decode_len = 64;
  std::optional<std::uint64_t> seed;
  bool detok = true;

  bool sampling() const { return sampling_topk > 0; }
  void validate() const;

  friend bool operator==(const DecodeConfig&, const DecodeConfig&) = default;
};

struct Hypothesis {
  std::vector<TokenId> tokens;  // generated tokens only; no forced prefix, no EOS
  double score = 0.0;           // sum of log-probabilities of generated tokens
  bool constrained = false;
  int run_index = 0;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct Prediction {
  std::string word;
  Hypothesis source_hypothesis;
  int runs_used = 1;
};

// Dataset lines: one JSON object per line, keys in canonical order
// id, source, left_context, right_context, typed, gold (optional), src_lang, tgt_lang.
std::string to_json_line(const WlacInstance& instance);
WlacInstance parse_json_line(std::string_view line);

std::vector<WlacInstance> read_dataset(const std::string& path);
void write_dataset(const std::string& path, const std::vector<WlacInstance>& instances);

}  // namespace wlac
