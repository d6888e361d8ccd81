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

// Subword codec, Latin word tokenizer, dictionary max-match CJK segmenter
// and detokenizer.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wlac/core.hpp"

namespace wlac {

// Word-start marker, U+2581.
inline constexpr std::string_view kBoundaryMarker = "\xE2\x96\x81";
inline constexpr std::string_view kUnkPiece = "<unk>";
inline constexpr std::string_view kEosPiece = "</s>";

// Control tokens look like ">>cmn_Hans<<".
bool is_control_piece(std::string_view piece);

// Ordered subword inventory. Ids 0, 1, 2 are always <unk>, </s> and the bare
// boundary marker; control tokens follow, then single characters, then merges.
class SubwordVocab {
 public:
  static constexpr TokenId kUnkId = 0;
  static constexpr TokenId kEosId = 1;
  static constexpr TokenId kBoundaryId = 2;

  SubwordVocab() = default;

  static SubwordVocab from_pieces(std::vector<std::string> pieces);
  static SubwordVocab load(const std::string& path);
  void save(const std::string& path) const;

  std::size_t size() const { return pieces_.size(); }
  const std::vector<std::string>& pieces() const { return pieces_; }
  const std::string& piece(TokenId id) const;  // throws on out-of-range ids
  std::optional<TokenId> find(std::string_view piece) const;

  bool contains(TokenId id) const { return id >= 0 && static_cast<std::size_t>(id) < pieces_.size(); }
  bool is_control(TokenId id) const;
  // Characters guaranteed to encode without <unk>.
  const std::vector<char32_t>& charset() const { return charset_; }
  bool encodable(char32_t cp) const { return charset_set_.count(cp) > 0; }

  // Longest matchable piece, in code points.
  std::size_t max_piece_length() const { return max_piece_cps_; }
  // Lookup restricted to pieces encode may produce (no specials/control tokens).
  std::optional<TokenId> find_matchable(std::string_view piece) const;

  friend bool operator==(const SubwordVocab& a, const SubwordVocab& b) { return a.pieces_ == b.pieces_; }

 private:
  std::vector<std::string> pieces_;
  std::unordered_map<std::string, TokenId> index_;
  std::unordered_map<std::string, TokenId> matchable_;
  std::vector<char32_t> charset_;
  std::unordered_set<char32_t> charset_set_;
  std::size_t max_piece_cps_ = 1;
};

// Frequency-ranked pair-merge training with character fallback. Deterministic
// in corpus order; ties between pairs of equal count go to the
// lexicographically smaller (left, right) pair.
SubwordVocab train_subwords(std::span<const std::string> corpus, std::size_t vocab_size,
                            std::span<const std::string> control_tokens = {});

// Greedy longest-match per whitespace-separated word. `dialect_token`, when
// given, must be a control token of `vocab` and becomes element 0.
std::vector<TokenId> encode(const SubwordVocab& vocab, std::string_view text,
                            std::optional<std::string_view> dialect_token = std::nullopt);

std::string decode(const SubwordVocab& vocab, std::span<const TokenId> tokens);

using WordList = std::vector<std::string>;

// Word inventory for max-match segmentation.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<std::string> words);
  static Lexicon load(const std::string& path);

  bool contains(std::string_view word) const { return set_.count(std::string(word)) > 0; }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t max_word_length() const { return max_cps_; }
  bool empty() const { return words_.empty(); }

 private:
  std::vector<std::string> words_;
  std::unordered_set<std::string> set_;
  std::size_t max_cps_ = 0;
};

bool is_cjk_language(std::string_view lang);

// Latin: whitespace split, then leading/trailing punctuation peeled into
// separate tokens. CJK: forward maximum matching against `lexicon`,
// unmatched characters emitted alone. CJK without a lexicon throws.
WordList word_tokenize(std::string_view text, std::string_view lang, const Lexicon* lexicon = nullptr);

std::string detokenize(std::span<const std::string> words, std::string_view lang);

}  // namespace wlac
