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

// Scripted fr->en pair reproducing the published /translate and /suggest
// examples, plus a small trained pair for request storms.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wlac/completion.hpp"
#include "wlac/evalkit.hpp"
#include "wlac/service.hpp"
#include "wlac/utf8.hpp"

namespace wlac::testing {

inline LanguagePair covid_pair() {
  const std::vector<std::pair<std::string, double>> sentences{
      {"The COVID-19 crisis has deepened already existing inequalities.", 0.45 * 0.7},
      {"The COVID-19 pandemic has deepened already existing inequalities.", 0.45 * 0.3},
      {"The crisis of COVID-19 has deepened already existing inequalities.", 0.35},
      {"The impact of COVID-19 crisis has deepened already existing inequalities .", 0.20},
  };
  std::vector<std::string> pieces{std::string(kUnkPiece), std::string(kEosPiece), std::string(kBoundaryMarker)};
  std::map<std::string, TokenId> ids;
  std::vector<std::vector<std::string>> split;
  for (const auto& [text, w] : sentences) {
    split.push_back(utf8::split_whitespace(text));
    for (const auto& word : split.back()) {
      const std::string piece = std::string(kBoundaryMarker) + word;
      if (ids.emplace(piece, static_cast<TokenId>(pieces.size())).second) pieces.push_back(piece);
    }
  }
  const auto vocab = SubwordVocab::from_pieces(pieces);
  std::map<std::vector<TokenId>, std::vector<double>> mass;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    std::vector<TokenId> prefix;
    for (std::size_t i = 0; i <= split[s].size(); ++i) {
      auto& m = mass[prefix];
      m.resize(vocab.size(), 0.0);
      const TokenId next = i < split[s].size() ? ids.at(std::string(kBoundaryMarker) + split[s][i])
                                               : SubwordVocab::kEosId;
      m[static_cast<std::size_t>(next)] += sentences[s].second;
      prefix.push_back(next);
    }
  }
  std::vector<double> eos(vocab.size(), 0.0);
  eos[SubwordVocab::kEosId] = 1.0;
  auto model = std::make_shared<ScriptedModel>(vocab, eos);
  for (auto& [prefix, m] : mass) {
    double total = 0.0;
    for (double v : m) total += v;
    for (double& v : m) v /= total;
    model->set(prefix, m);
  }
  LanguagePair pair;
  pair.model = std::move(model);
  pair.src_lang = "fr";
  pair.tgt_lang = "en";
  return pair;
}

// Deterministic beam n-best so suggestion lists are stable.
inline ServiceConfig golden_config(bool legacy_keys) {
  ServiceConfig cfg;
  cfg.suggest.beam_size = 3;
  cfg.suggest.sampling_topk = 0;
  cfg.suggest.num_hypotheses = 3;
  cfg.first_id = 10550004;
  cfg.legacy_keys = legacy_keys;
  return cfg;
}

inline const char* kGoldenTranslateRequest =
    R"({"sentences": ["La crise de la COVID-19 a creusé des inégalités déjà existantes."],)"
    R"( "source_language": "fr", "target_language": "en"})";
inline const char* kGoldenSuggestRequest =
    R"({"sentence": "La crise de la COVID-19 a creusé des inégalités déjà existantes.",)"
    R"( "prefix": "The", "source_language": "fr", "target_language": "en"})";

inline std::vector<ReferencePair> storm_corpus(const std::string& src_words_lang) {
  const std::vector<std::pair<std::string, std::string>> fr{
      {"chat", "cat"}, {"chien", "dog"}, {"oiseau", "bird"}, {"poisson", "fish"}, {"cheval", "horse"}};
  const std::vector<std::pair<std::string, std::string>> de{
      {"katze", "cat"}, {"hund", "dog"}, {"vogel", "bird"}, {"fisch", "fish"}, {"pferd", "horse"}};
  const std::vector<std::pair<std::string, std::string>> verbs_fr{{"dort", "sleeps"}, {"mange", "eats"}};
  const std::vector<std::pair<std::string, std::string>> verbs_de{{"schläft", "sleeps"}, {"frisst", "eats"}};
  const auto& nouns = src_words_lang == "de" ? de : fr;
  const auto& verbs = src_words_lang == "de" ? verbs_de : verbs_fr;
  const std::string det = src_words_lang == "de" ? "der" : "le";
  std::vector<ReferencePair> out;
  for (int rep = 0; rep < 3; ++rep) {
    for (const auto& [n, tn] : nouns) {
      for (const auto& [v, tv] : verbs) out.push_back({det + " " + n + " " + v, "the " + tn + " " + tv});
    }
  }
  return out;
}

inline LanguagePair storm_pair(const std::string& src_lang) {
  PairTrainingOptions opt;
  opt.source_vocab_size = 60;
  opt.target_vocab_size = 60;
  opt.src_lang = src_lang;
  opt.tgt_lang = "en";
  opt.model.em_iterations = 8;
  return train_language_pair(storm_corpus(src_lang), opt).pair;
}

}  // namespace wlac::testing
