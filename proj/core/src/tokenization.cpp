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

#include "wlac/tokenization.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <utility>

#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

bool is_control_piece(std::string_view piece) {
  return piece.size() > 4 && piece.substr(0, 2) == ">>" && piece.substr(piece.size() - 2) == "<<";
}

SubwordVocab SubwordVocab::from_pieces(std::vector<std::string> pieces) {
  if (pieces.size() < 3 || pieces[0] != kUnkPiece || pieces[1] != kEosPiece ||
      pieces[2] != kBoundaryMarker) {
    fail(ErrorKind::kInvalidArgument, "vocab must start with <unk>, </s> and the boundary marker");
  }
  SubwordVocab vocab;
  vocab.pieces_ = std::move(pieces);
  for (std::size_t i = 0; i < vocab.pieces_.size(); ++i) {
    const std::string& p = vocab.pieces_[i];
    if (p.empty()) fail(ErrorKind::kInvalidArgument, "empty vocab piece at rank " + std::to_string(i));
    if (!vocab.index_.emplace(p, static_cast<TokenId>(i)).second) {
      fail(ErrorKind::kInvalidArgument, "duplicate vocab piece: " + p);
    }
    if (i < 2 || is_control_piece(p)) continue;
    vocab.matchable_.emplace(p, static_cast<TokenId>(i));
    const std::size_t cps = utf8::length(p);
    vocab.max_piece_cps_ = std::max(vocab.max_piece_cps_, cps);
    if (cps == 1 && p != kBoundaryMarker) {
      const char32_t cp = utf8::decode(p)[0];
      if (vocab.charset_set_.insert(cp).second) vocab.charset_.push_back(cp);
    }
  }
  return vocab;
}

SubwordVocab SubwordVocab::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open vocab file: " + path);
  std::vector<std::string> pieces;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pieces.push_back(line);
  }
  return from_pieces(std::move(pieces));
}

void SubwordVocab::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write vocab file: " + path);
  for (const auto& p : pieces_) out << p << '\n';
  if (!out) fail(ErrorKind::kIo, "write failed: " + path);
}

const std::string& SubwordVocab::piece(TokenId id) const {
  if (!contains(id)) fail(ErrorKind::kInvalidArgument, "unknown token id " + std::to_string(id));
  return pieces_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> SubwordVocab::find(std::string_view piece) const {
  auto it = index_.find(std::string(piece));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TokenId> SubwordVocab::find_matchable(std::string_view piece) const {
  auto it = matchable_.find(std::string(piece));
  if (it == matchable_.end()) return std::nullopt;
  return it->second;
}

bool SubwordVocab::is_control(TokenId id) const {
  return contains(id) && (id == kEosId || is_control_piece(pieces_[static_cast<std::size_t>(id)]));
}

namespace {

struct WordEntry {
  std::vector<std::string> symbols;
  long freq = 0;
};

void apply_merge(WordEntry& word, const std::string& left, const std::string& right) {
  auto& s = word.symbols;
  if (s.size() < 2) return;
  std::vector<std::string> merged;
  merged.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i] == left && s[i + 1] == right) {
      merged.push_back(left + right);
      ++i;
    } else {
      merged.push_back(std::move(s[i]));
    }
  }
  s = std::move(merged);
}

}  // namespace

SubwordVocab train_subwords(std::span<const std::string> corpus, std::size_t vocab_size,
                            std::span<const std::string> control_tokens) {
  if (corpus.empty()) fail(ErrorKind::kInvalidArgument, "subword training corpus is empty");

  std::vector<WordEntry> words;
  std::unordered_map<std::string, std::size_t> word_index;
  std::map<char32_t, long> char_freq;
  const char32_t boundary_cp = utf8::decode(kBoundaryMarker)[0];

  for (const auto& line : corpus) {
    for (auto& w : utf8::split_whitespace(line)) {
      auto [it, inserted] = word_index.emplace(w, words.size());
      if (inserted) {
        WordEntry entry;
        entry.symbols.emplace_back(kBoundaryMarker);
        for (char32_t cp : utf8::decode(w)) entry.symbols.push_back(utf8::encode(cp));
        words.push_back(std::move(entry));
      }
      words[it->second].freq += 1;
      for (char32_t cp : utf8::decode(w)) {
        if (cp != boundary_cp) char_freq[cp] += 1;
      }
    }
  }

  std::vector<std::string> pieces{std::string(kUnkPiece), std::string(kEosPiece),
                                  std::string(kBoundaryMarker)};
  for (const auto& c : control_tokens) {
    if (!is_control_piece(c)) fail(ErrorKind::kInvalidArgument, "not a control token: " + c);
    if (std::find(pieces.begin(), pieces.end(), c) == pieces.end()) pieces.push_back(c);
  }

  std::vector<std::pair<char32_t, long>> chars(char_freq.begin(), char_freq.end());
  std::stable_sort(chars.begin(), chars.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [cp, freq] : chars) pieces.push_back(utf8::encode(cp));

  if (vocab_size < pieces.size()) {
    fail(ErrorKind::kInvalidArgument,
         "vocab_size " + std::to_string(vocab_size) + " is too small for the corpus charset; need at least " +
             std::to_string(pieces.size()));
  }

  std::unordered_set<std::string> known(pieces.begin(), pieces.end());
  while (pieces.size() < vocab_size) {
    std::map<std::pair<std::string, std::string>, long> pair_counts;
    for (const auto& w : words) {
      for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
        pair_counts[{w.symbols[i], w.symbols[i + 1]}] += w.freq;
      }
    }
    if (pair_counts.empty()) break;
    auto best = pair_counts.begin();
    for (auto it = pair_counts.begin(); it != pair_counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [left, right] = best->first;
    for (auto& w : words) apply_merge(w, left, right);
    std::string merged = left + right;
    if (known.insert(merged).second) pieces.push_back(std::move(merged));
  }
  return SubwordVocab::from_pieces(std::move(pieces));
}

std::vector<TokenId> encode(const SubwordVocab& vocab, std::string_view text,
                            std::optional<std::string_view> dialect_token) {
  std::vector<TokenId> out;
  if (dialect_token) {
    auto id = vocab.find(*dialect_token);
    if (!id || !is_control_piece(*dialect_token)) {
      fail(ErrorKind::kInvalidArgument, "dialect token not registered: " + std::string(*dialect_token));
    }
    out.push_back(*id);
  }
  const std::size_t max_len = vocab.max_piece_length();
  for (const auto& word : utf8::split_whitespace(text)) {
    const std::string marked = std::string(kBoundaryMarker) + word;
    const auto b = utf8::boundaries(marked);
    const std::size_t n = b.size() - 1;
    std::size_t i = 0;
    while (i < n) {
      bool matched = false;
      for (std::size_t len = std::min(max_len, n - i); len >= 1; --len) {
        auto id = vocab.find_matchable(std::string_view(marked).substr(b[i], b[i + len] - b[i]));
        if (id) {
          out.push_back(*id);
          i += len;
          matched = true;
          break;
        }
      }
      if (!matched) {
        out.push_back(SubwordVocab::kUnkId);
        ++i;
      }
    }
  }
  return out;
}

std::string decode(const SubwordVocab& vocab, std::span<const TokenId> tokens) {
  std::string out;
  for (TokenId id : tokens) {
    const std::string& p = vocab.piece(id);
    if (vocab.is_control(id)) continue;
    std::size_t pos = 0;
    while (pos < p.size()) {
      if (p.compare(pos, kBoundaryMarker.size(), kBoundaryMarker) == 0) {
        out.push_back(' ');
        pos += kBoundaryMarker.size();
      } else {
        out.push_back(p[pos++]);
      }
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

Lexicon::Lexicon(std::vector<std::string> words) {
  for (auto& w : words) {
    if (w.empty() || !set_.insert(w).second) continue;
    max_cps_ = std::max(max_cps_, utf8::length(w));
    words_.push_back(std::move(w));
  }
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open lexicon: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto fields = utf8::split_whitespace(line);
    if (!fields.empty()) words.push_back(std::move(fields.front()));
  }
  return Lexicon(std::move(words));
}

bool is_cjk_language(std::string_view lang) {
  return lang == "zh" || lang == "cmn" || utf8::starts_with(lang, "zh-") ||
         utf8::starts_with(lang, "zh_") || utf8::starts_with(lang, "cmn_");
}

namespace {

// Punctuation peeled off word edges by the Latin tokenizer.
bool is_edge_punct(char32_t cp) {
  switch (cp) {
    case '.': case ',': case '!': case '?': case ':': case ';':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '\'':
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x00AB: case 0x00BB: case 0x2026:               // guillemets, ellipsis
    case 0x3001: case 0x3002: case 0xFF0C: case 0xFF01: case 0xFF1F:
    case 0xFF1A: case 0xFF1B: case 0xFF08: case 0xFF09:
      return true;
    default:
      return false;
  }
}

// Detokenizer glue sets.
bool is_closing(std::string_view w) {
  static const std::unordered_set<std::string_view> closing{
      ".", ",", "!", "?", ":", ";", ")", "]", "\xE2\x80\x9D"};
  return closing.count(w) > 0;
}

bool is_opening(std::string_view w) {
  static const std::unordered_set<std::string_view> opening{"(", "[", "\xE2\x80\x9C"};
  return opening.count(w) > 0;
}

void tokenize_latin_chunk(std::string_view chunk, WordList& out) {
  const std::u32string cps = utf8::decode(chunk);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && is_edge_punct(cps[begin])) {
    out.push_back(utf8::encode(cps[begin]));
    ++begin;
  }
  std::vector<std::string> trailing;
  while (end > begin && is_edge_punct(cps[end - 1])) {
    trailing.push_back(utf8::encode(cps[end - 1]));
    --end;
  }
  if (begin < end) out.push_back(utf8::encode(std::u32string_view(cps).substr(begin, end - begin)));
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

void segment_cjk_chunk(std::string_view chunk, const Lexicon& lexicon, WordList& out) {
  const auto b = utf8::boundaries(chunk);
  const std::size_t n = b.size() - 1;
  const std::size_t max_len = std::max<std::size_t>(1, lexicon.max_word_length());
  std::size_t i = 0;
  while (i < n) {
    std::size_t take = 1;
    for (std::size_t len = std::min(max_len, n - i); len >= 2; --len) {
      if (lexicon.contains(chunk.substr(b[i], b[i + len] - b[i]))) {
        take = len;
        break;
      }
    }
    out.emplace_back(chunk.substr(b[i], b[i + take] - b[i]));
    i += take;
  }
}

}  // namespace

WordList word_tokenize(std::string_view text, std::string_view lang, const Lexicon* lexicon) {
  WordList out;
  if (is_cjk_language(lang)) {
    if (lexicon == nullptr) {
      fail(ErrorKind::kInvalidArgument, "word tokenization for '" + std::string(lang) + "' needs a lexicon");
    }
    for (const auto& chunk : utf8::split_whitespace(text)) segment_cjk_chunk(chunk, *lexicon, out);
    return out;
  }
  for (const auto& chunk : utf8::split_whitespace(text)) tokenize_latin_chunk(chunk, out);
  return out;
}

std::string detokenize(std::span<const std::string> words, std::string_view lang) {
  std::string out;
  if (is_cjk_language(lang)) {
    for (const auto& w : words) out += w;
    return out;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0 && !is_closing(words[i]) && !is_opening(words[i - 1])) out.push_back(' ');
    out += words[i];
  }
  return out;
}

}  // namespace wlac
