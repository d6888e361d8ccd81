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

#include <algorithm>

#include "test_support.hpp"
#include "wlac/error.hpp"
#include "wlac/tokenization.hpp"
#include "wlac/utf8.hpp"

namespace wlac {
namespace {

using testing::Gen;
using testing::make_vocab;
using testing::TempDir;

const std::string kMark(kBoundaryMarker);

std::vector<std::string> pieces_of(const SubwordVocab& vocab, const std::vector<TokenId>& ids) {
  std::vector<std::string> out;
  for (TokenId id : ids) out.push_back(vocab.piece(id));
  return out;
}

std::string normalize_ws(std::string_view text) {
  std::string out;
  for (const auto& w : utf8::split_whitespace(text)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

TEST(TrainSubwords, MergesMostFrequentWord) {
  const std::vector<std::string> corpus{"the cat", "the hat", "a cat"};
  const auto vocab = train_subwords(corpus, 30);
  EXPECT_TRUE(vocab.find(kMark + "the").has_value());
  EXPECT_LE(vocab.size(), 30u);
  EXPECT_EQ(pieces_of(vocab, encode(vocab, "the cat")), (std::vector<std::string>{kMark + "the", kMark + "cat"}));
}

TEST(TrainSubwords, SpecialsFirstAndCharacterFallback) {
  const std::vector<std::string> corpus{"the cat", "the hat", "a cat", "zebra!"};
  const auto vocab = train_subwords(corpus, 40);
  EXPECT_EQ(vocab.piece(SubwordVocab::kUnkId), kUnkPiece);
  EXPECT_EQ(vocab.piece(SubwordVocab::kEosId), kEosPiece);
  EXPECT_EQ(vocab.piece(SubwordVocab::kBoundaryId), kMark);
  for (const auto& line : corpus) {
    for (char32_t cp : utf8::decode(line)) {
      if (utf8::is_space(cp)) continue;
      EXPECT_TRUE(vocab.find(utf8::encode(cp)).has_value()) << utf8::encode(cp);
      EXPECT_TRUE(vocab.encodable(cp));
    }
  }
}

TEST(TrainSubwords, MinimumVocabularyIsCharsetPlusSpecials) {
  const std::vector<std::string> corpus{"ab"};
  const auto vocab = train_subwords(corpus, 5);
  EXPECT_EQ(vocab.size(), 5u);
  try {
    train_subwords(corpus, 4);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("need at least 5"), std::string::npos) << e.what();
  }
}

TEST(TrainSubwords, ControlTokensAreRegisteredButNeverEncoded) {
  const std::vector<std::string> corpus{">>cmn_Hans<< text", "more text"};
  const std::vector<std::string> controls{">>cmn_Hans<<"};
  const auto vocab = train_subwords(corpus, 60, controls);
  const auto ctl = vocab.find(">>cmn_Hans<<");
  ASSERT_TRUE(ctl.has_value());
  EXPECT_EQ(*ctl, 3);
  for (TokenId id : encode(vocab, ">>cmn_Hans<< text")) EXPECT_NE(id, *ctl);
}

TEST(TrainSubwords, Deterministic) {
  const std::vector<std::string> corpus{"der hund", "die katze", "der die das", "hund katze maus"};
  EXPECT_EQ(train_subwords(corpus, 50), train_subwords(corpus, 50));
  EXPECT_THROW(train_subwords(std::vector<std::string>{}, 50), Error);
}

TEST(Encode, DialectTokenIsFirst) {
  const auto vocab = make_vocab({">>cmn_Hans<<", "好", kMark + "好"});
  const auto ids = encode(vocab, "好", std::string_view(">>cmn_Hans<<"));
  EXPECT_EQ(pieces_of(vocab, ids), (std::vector<std::string>{">>cmn_Hans<<", kMark + "好"}));
  EXPECT_THROW(encode(vocab, "好", std::string_view(">>fra<<")), Error);
}

TEST(Encode, UnknownCharactersBecomeUnk) {
  const auto vocab = make_vocab({"a", kMark + "a"});
  EXPECT_EQ(encode(vocab, "aqa"), (std::vector<TokenId>{4, SubwordVocab::kUnkId, 3}));
  EXPECT_TRUE(encode(vocab, "").empty());
  EXPECT_TRUE(encode(vocab, "   ").empty());
}

TEST(Decode, BoundaryMarkersAndControls) {
  const auto vocab = make_vocab({kMark + "the", kMark + "ca", "t", ">>cmn_Hans<<", kMark + "你"});
  auto ids = [&](std::initializer_list<std::string_view> ps) {
    std::vector<TokenId> out;
    for (auto p : ps) out.push_back(*vocab.find(p));
    return out;
  };
  EXPECT_EQ(decode(vocab, ids({kMark + "the", kMark + "ca", "t"})), "the cat");
  EXPECT_EQ(decode(vocab, std::vector<TokenId>{}), "");
  EXPECT_EQ(decode(vocab, ids({">>cmn_Hans<<", kMark + "你"})), "你");
  EXPECT_EQ(decode(vocab, ids({kMark + "the", "</s>"})), "the");
  EXPECT_THROW(decode(vocab, std::vector<TokenId>{99}), Error);
}

TEST(SubwordProperty, RoundTripOnInCharsetStrings) {
  const std::vector<std::string> corpus{"the quick brown fox jumps over the lazy dog",
                                        "über café naïve", "我们喜欢猫", "a-b c.d e,f"};
  const auto vocab = train_subwords(corpus, 120);
  const auto& charset = vocab.charset();
  Gen gen(2024);
  for (int i = 0; i < 1000; ++i) {
    std::u32string text;
    const int n = gen.range(0, 30);
    for (int k = 0; k < n; ++k) {
      if (gen.range(0, 5) == 0) {
        text.push_back(gen.coin() ? U' ' : U'\t');
      } else {
        text.push_back(charset[static_cast<std::size_t>(gen.range(0, static_cast<int>(charset.size()) - 1))]);
      }
    }
    const std::string s = utf8::encode(text);
    const auto ids = encode(vocab, s);
    EXPECT_EQ(std::count(ids.begin(), ids.end(), SubwordVocab::kUnkId), 0) << s;
    EXPECT_EQ(decode(vocab, ids), normalize_ws(s)) << s;
    EXPECT_EQ(encode(vocab, s), ids);
  }
}

TEST(SubwordVocab, SaveLoadRoundTrip) {
  TempDir dir;
  const auto vocab = train_subwords(std::vector<std::string>{"hello world", "hello there"}, 40);
  vocab.save(dir.file("v.txt"));
  EXPECT_EQ(SubwordVocab::load(dir.file("v.txt")), vocab);
  EXPECT_THROW(SubwordVocab::load(dir.file("none.txt")), Error);
  EXPECT_THROW(SubwordVocab::from_pieces({"a", "b", "c"}), Error);
  EXPECT_THROW(SubwordVocab::from_pieces({"<unk>", "</s>", kMark, "x", "x"}), Error);
}

TEST(WordTokenize, Latin) {
  EXPECT_EQ(word_tokenize("The cat, sat.", "en"), (WordList{"The", "cat", ",", "sat", "."}));
  EXPECT_EQ(word_tokenize("(hello) \"x\"", "en"), (WordList{"(", "hello", ")", "\"", "x", "\""}));
  EXPECT_EQ(word_tokenize("don't stop", "en"), (WordList{"don't", "stop"}));
  EXPECT_TRUE(word_tokenize("", "en").empty());
}

TEST(WordTokenize, CjkMaxMatch) {
  const Lexicon lex({"我们", "我", "们", "喜欢"});
  EXPECT_EQ(word_tokenize("我们喜欢", "zh", &lex), (WordList{"我们", "喜欢"}));
  EXPECT_EQ(word_tokenize("我X们", "zh", &lex), (WordList{"我", "X", "们"}));
  EXPECT_EQ(word_tokenize("我们 喜欢", "zh", &lex), (WordList{"我们", "喜欢"}));
  EXPECT_THROW(word_tokenize("我们", "zh"), Error);
}

TEST(Detokenize, Rules) {
  EXPECT_EQ(detokenize(WordList{"The", "cat", ","}, "en"), "The cat,");
  EXPECT_EQ(detokenize(WordList{"(", "a", ")", "b", "."}, "en"), "(a) b.");
  EXPECT_EQ(detokenize(WordList{"我们", "喜欢"}, "zh"), "我们喜欢");
  EXPECT_EQ(detokenize(WordList{}, "en"), "");
}

TEST(CjkProperty, SegmentationConservesText) {
  const Lexicon lex = Lexicon::load(std::string(WLAC_DATA_DIR) + "/zh/lexicon.txt");
  ASSERT_GT(lex.words().size(), 1000u);
  Gen gen(9);
  const std::vector<std::string> extras{"A", "股", "1", "，", "。", "X", "猫", "的"};
  for (int i = 0; i < 500; ++i) {
    std::string text;
    const int n = gen.range(0, 8);
    for (int k = 0; k < n; ++k) {
      text += gen.range(0, 2) == 0 ? gen.pick(extras) : gen.pick(lex.words());
    }
    const auto words = word_tokenize(text, "zh", &lex);
    std::string joined;
    for (const auto& w : words) {
      EXPECT_FALSE(w.empty());
      joined += w;
    }
    EXPECT_EQ(joined, text);
  }
}

TEST(TokenizeProperty, DetokenizeIsIdempotent) {
  Gen gen(3);
  const std::vector<std::string> atoms{"the", "cat", ",", ".", "(", ")", "\"", "sat", "?", "[", "]", "“", "”"};
  for (int i = 0; i < 500; ++i) {
    std::string text;
    const int n = gen.range(0, 10);
    for (int k = 0; k < n; ++k) text += gen.pick(atoms) + (gen.coin() ? " " : "");
    const std::string once = detokenize(word_tokenize(text, "en"), "en");
    EXPECT_EQ(detokenize(word_tokenize(once, "en"), "en"), once) << text;
  }
}

TEST(Lexicon, LoadTakesFirstField) {
  TempDir dir;
  {
    std::ofstream out(dir.file("lex.txt"));
    out << "我们 100 r\n喜欢\n\n我们\n";
  }
  const auto lex = Lexicon::load(dir.file("lex.txt"));
  EXPECT_EQ(lex.words(), (std::vector<std::string>{"我们", "喜欢"}));
  EXPECT_EQ(lex.max_word_length(), 2u);
  EXPECT_TRUE(is_cjk_language("zh"));
  EXPECT_TRUE(is_cjk_language("zh-Hans"));
  EXPECT_TRUE(is_cjk_language("cmn_Hans"));
  EXPECT_FALSE(is_cjk_language("en"));
}

}  // namespace
}  // namespace wlac
