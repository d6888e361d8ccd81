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

// End-to-end word-level completion: prefix heuristic, candidate generation
// with and without the left context as a forced target prefix, first-match
// word selection and retry over sampling runs.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wlac/core.hpp"
#include "wlac/decoder.hpp"
#include "wlac/model.hpp"
#include "wlac/tokenization.hpp"
#include "wlac/translit.hpp"

namespace wlac {

enum class CaseMode { kExactThenFold, kExactOnly };
enum class TargetScript { kLatin, kHan };

struct MatchPolicy {
  bool detok = true;
  CaseMode case_mode = CaseMode::kExactThenFold;
  TargetScript target_script = TargetScript::kLatin;
};

TargetScript script_for_language(std::string_view lang);

// A loaded model plus everything needed to encode, decode and match for one
// translation direction.
struct LanguagePair {
  std::shared_ptr<const TranslationModel> model;
  std::string src_lang;
  std::string tgt_lang;
  std::optional<std::string> dialect_token;
  std::shared_ptr<const Lexicon> lexicon;   // required for Han targets
  std::shared_ptr<const PinyinTable> pinyin;  // required for Han targets
  MatchPolicy policy;
  // Han has no letter case; constrain on any non-empty left context.
  bool constrain_han_context = true;

  std::vector<TokenId> encode_source(std::string_view text) const;
  std::vector<TokenId> encode_target(std::string_view text) const;
  std::string decode_target(std::span<const TokenId> tokens) const;
  WordList target_words(std::string_view text) const;

  void validate() const;
};

// Loads a LexBigram model directory; Han targets additionally need
// lexicon.txt and pinyin.tsv inside it.
LanguagePair load_language_pair(const std::string& dir);

// Latin: trimmed context starts with an uppercase letter. Han: non-empty
// (when `han_rule` is on).
bool should_constrain(std::string_view left_context, TargetScript script, bool han_rule = true);

// Constrained hypotheses (left context as target prefix) first, when the
// heuristic fires, then the unconstrained set. The right context is never read.
std::vector<Hypothesis> generate_candidates(const LanguagePair& pair, const WlacInstance& instance,
                                            const DecodeConfig& config, RngState& rng);

struct WordMatch {
  std::string word;
  std::size_t hypothesis_index = 0;
};

// Scans hypotheses in order and returns the first word whose match key
// (the word itself, or its Pinyin for Han) starts with `typed`. Under
// kExactThenFold a case-folded pass runs only if no exact match exists.
std::optional<WordMatch> match_word(std::span<const Hypothesis> hypotheses, std::string_view typed,
                                    const MatchPolicy& policy, const SubwordVocab& vocab,
                                    std::string_view tgt_lang, const PinyinTable* pinyin = nullptr,
                                    const Lexicon* lexicon = nullptr);

struct CompletionOutcome {
  std::optional<Prediction> prediction;
  int runs_used = 1;  // generation passes performed
};

CompletionOutcome complete(const LanguagePair& pair, const WlacInstance& instance, const DecodeConfig& config,
                           RngState& rng);

}  // namespace wlac
