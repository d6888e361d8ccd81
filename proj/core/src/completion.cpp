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

#include "wlac/completion.hpp"

#include <filesystem>

#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

TargetScript script_for_language(std::string_view lang) {
  return is_cjk_language(lang) ? TargetScript::kHan : TargetScript::kLatin;
}

std::vector<TokenId> LanguagePair::encode_source(std::string_view text) const {
  if (dialect_token) return encode(model->source_vocab(), text, *dialect_token);
  return encode(model->source_vocab(), text);
}

std::vector<TokenId> LanguagePair::encode_target(std::string_view text) const {
  return encode(model->target_vocab(), text);
}

std::string LanguagePair::decode_target(std::span<const TokenId> tokens) const {
  return decode(model->target_vocab(), tokens);
}

WordList LanguagePair::target_words(std::string_view text) const {
  return word_tokenize(text, tgt_lang, lexicon.get());
}

void LanguagePair::validate() const {
  if (!model) fail(ErrorKind::kInvalidArgument, "language pair has no model");
  if (policy.target_script == TargetScript::kHan && (!lexicon || !pinyin)) {
    fail(ErrorKind::kInvalidArgument, "Han target '" + tgt_lang + "' needs a lexicon and a pinyin table");
  }
}

LanguagePair load_language_pair(const std::string& dir) {
  namespace fs = std::filesystem;
  auto model = std::make_shared<LexBigramModel>(LexBigramModel::load(dir));
  LanguagePair pair;
  pair.src_lang = model->metadata().src_lang;
  pair.tgt_lang = model->metadata().tgt_lang;
  pair.dialect_token = model->metadata().dialect_token;
  pair.policy.target_script = script_for_language(pair.tgt_lang);
  const fs::path root(dir);
  if (fs::exists(root / "lexicon.txt")) {
    pair.lexicon = std::make_shared<Lexicon>(Lexicon::load((root / "lexicon.txt").string()));
  }
  if (fs::exists(root / "pinyin.tsv")) {
    pair.pinyin = std::make_shared<PinyinTable>(PinyinTable::load((root / "pinyin.tsv").string()));
  }
  pair.model = std::move(model);
  pair.validate();
  return pair;
}

bool should_constrain(std::string_view left_context, TargetScript script, bool han_rule) {
  const std::string_view trimmed = utf8::trim(left_context);
  if (trimmed.empty()) return false;
  if (script == TargetScript::kHan) return han_rule;
  return utf8::is_upper(utf8::decode(utf8::prefix(trimmed, 1))[0]);
}

namespace {

void generate_into(SourceContext& ctx, const LanguagePair& pair, std::span<const TokenId> prefix,
                   const DecodeConfig& config, RngState& rng, int run_index, std::vector<Hypothesis>& out) {
  for (auto& h : decode_alternatives(ctx, pair.model->target_vocab(), prefix, config, rng)) {
    h.run_index = run_index;
    out.push_back(std::move(h));
  }
}

std::vector<Hypothesis> generate_with(SourceContext& ctx, const LanguagePair& pair,
                                      std::span<const TokenId> prefix, const DecodeConfig& config,
                                      RngState& rng, int run_index) {
  std::vector<Hypothesis> out;
  if (!prefix.empty()) generate_into(ctx, pair, prefix, config, rng, run_index, out);
  generate_into(ctx, pair, {}, config, rng, run_index, out);
  return out;
}

std::vector<TokenId> forced_prefix(const LanguagePair& pair, const WlacInstance& instance) {
  if (!should_constrain(instance.left_context, pair.policy.target_script, pair.constrain_han_context)) return {};
  return pair.encode_target(utf8::trim(instance.left_context));
}

}  // namespace

std::vector<Hypothesis> generate_candidates(const LanguagePair& pair, const WlacInstance& instance,
                                            const DecodeConfig& config, RngState& rng) {
  instance.validate();
  const auto source = pair.encode_source(instance.source);
  auto ctx = pair.model->bind(source);
  return generate_with(*ctx, pair, forced_prefix(pair, instance), config, rng, 0);
}

namespace {

std::string match_key(std::string_view word, TargetScript script, const PinyinTable* pinyin) {
  if (script == TargetScript::kHan) return to_pinyin(*pinyin, word);
  return std::string(word);
}

}  // namespace

std::optional<WordMatch> match_word(std::span<const Hypothesis> hypotheses, std::string_view typed,
                                    const MatchPolicy& policy, const SubwordVocab& vocab,
                                    std::string_view tgt_lang, const PinyinTable* pinyin,
                                    const Lexicon* lexicon) {
  if (typed.empty()) fail(ErrorKind::kInvalidArgument, "typed sequence is empty");
  if (policy.target_script == TargetScript::kHan && (pinyin == nullptr || lexicon == nullptr)) {
    fail(ErrorKind::kInvalidArgument, "Han matching needs a pinyin table and a lexicon");
  }

  std::vector<WordList> words;
  words.reserve(hypotheses.size());
  for (const auto& h : hypotheses) {
    const std::string text = decode(vocab, h.tokens);
    if (policy.detok) {
      const auto raw = utf8::split_whitespace(text);
      words.push_back(word_tokenize(detokenize(raw, tgt_lang), tgt_lang, lexicon));
    } else {
      words.push_back(word_tokenize(text, tgt_lang, lexicon));
    }
  }

  auto scan = [&](bool fold) -> std::optional<WordMatch> {
    const std::string key_typed = fold ? utf8::to_lower(typed) : std::string(typed);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (const auto& w : words[i]) {
        std::string key = match_key(w, policy.target_script, pinyin);
        if (fold) key = utf8::to_lower(key);
        if (utf8::starts_with(key, key_typed)) return WordMatch{w, i};
      }
    }
    return std::nullopt;
  };

  if (auto m = scan(false)) return m;
  if (policy.case_mode == CaseMode::kExactThenFold) return scan(true);
  return std::nullopt;
}

CompletionOutcome complete(const LanguagePair& pair, const WlacInstance& instance, const DecodeConfig& config,
                           RngState& rng) {
  instance.validate();
  config.validate();
  const auto source = pair.encode_source(instance.source);
  auto ctx = pair.model->bind(source);
  const auto prefix = forced_prefix(pair, instance);
  MatchPolicy policy = pair.policy;
  policy.detok = config.detok;

  for (int run = 1; run <= config.max_runs; ++run) {
    DecodeConfig run_config = config;
    if (config.temperature_max && *config.temperature_max > config.temperature) {
      run_config.temperature = rng.uniform(config.temperature, *config.temperature_max);
    }
    auto hyps = generate_with(*ctx, pair, prefix, run_config, rng, run - 1);
    auto m = match_word(hyps, instance.typed, policy, pair.model->target_vocab(), pair.tgt_lang,
                        pair.pinyin.get(), pair.lexicon.get());
    if (m) {
      Prediction p{m->word, hyps[m->hypothesis_index], run};
      return {std::move(p), run};
    }
    // Without sampling every run would produce the same candidates.
    if (!config.sampling()) return {std::nullopt, run};
  }
  return {std::nullopt, config.max_runs};
}

}  // namespace wlac
