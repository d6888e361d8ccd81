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

#include "test_support.hpp"
#include "wlac/core.hpp"
#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {
namespace {

using testing::Gen;
using testing::TempDir;

WlacInstance sample_instance() {
  WlacInstance inst;
  inst.id = "7";
  inst.source = "le chat";
  inst.left_context = "The";
  inst.right_context = "sat .";
  inst.typed = "c";
  inst.gold = "cat";
  inst.src_lang = "fr";
  inst.tgt_lang = "en";
  return inst;
}

TEST(ClassifyContext, Definitions) {
  EXPECT_EQ(classify_context("", ""), ContextCase::kEmpty);
  EXPECT_EQ(classify_context("The", ""), ContextCase::kLeftOnly);
  EXPECT_EQ(classify_context("", "over ."), ContextCase::kRightOnly);
  EXPECT_EQ(classify_context("The", "over ."), ContextCase::kBoth);
}

TEST(ClassifyContext, WhitespaceOnlyIsEmpty) {
  EXPECT_EQ(classify_context("  \t", "\n"), ContextCase::kEmpty);
  EXPECT_EQ(classify_context("\xE3\x80\x80", "x"), ContextCase::kRightOnly);
}

TEST(ClassifyContext, TrimmingNeverChangesCase) {
  Gen gen(11);
  const std::vector<std::string> pads{"", " ", "  ", "\t", "\n", " \t "};
  const std::vector<std::string> bodies{"", "The", "a  b", "我们"};
  for (int i = 0; i < 500; ++i) {
    const std::string l = gen.pick(bodies);
    const std::string r = gen.pick(bodies);
    const auto base = classify_context(l, r);
    EXPECT_EQ(classify_context(gen.pick(pads) + l + gen.pick(pads), gen.pick(pads) + r + gen.pick(pads)), base);
  }
}

TEST(ContextCaseNames, RoundTrip) {
  for (auto c : {ContextCase::kEmpty, ContextCase::kRightOnly, ContextCase::kLeftOnly, ContextCase::kBoth}) {
    EXPECT_EQ(parse_context_case(context_case_name(c)), c);
  }
  EXPECT_THROW(parse_context_case("NONE"), Error);
}

TEST(WlacInstance, TypedMustBeNonEmptyWithoutWhitespace) {
  auto inst = sample_instance();
  EXPECT_NO_THROW(inst.validate());
  inst.typed = "";
  EXPECT_THROW(inst.validate(), Error);
  inst.typed = "c a";
  EXPECT_THROW(inst.validate(), Error);
}

TEST(DecodeConfig, Validation) {
  DecodeConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_FALSE(c.sampling());
  c.sampling_topk = 10;
  EXPECT_TRUE(c.sampling());
  c.temperature_max = 0.5;
  EXPECT_THROW(c.validate(), Error);
  c.temperature_max = 1.3;
  EXPECT_NO_THROW(c.validate());
  for (auto mutate : std::vector<void (*)(DecodeConfig&)>{
           [](DecodeConfig& d) { d.beam_size = 0; }, [](DecodeConfig& d) { d.sampling_topk = -1; },
           [](DecodeConfig& d) { d.num_hypotheses = 0; }, [](DecodeConfig& d) { d.temperature = 0.0; },
           [](DecodeConfig& d) { d.max_runs = 0; }, [](DecodeConfig& d) { d.max_decode_len = 0; }}) {
    DecodeConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.validate(), Error);
  }
}

TEST(JsonLines, CanonicalKeyOrder) {
  EXPECT_EQ(to_json_line(sample_instance()),
            R"({"id":"7","source":"le chat","left_context":"The","right_context":"sat .","typed":"c",)"
            R"("gold":"cat","src_lang":"fr","tgt_lang":"en"})");
  auto no_gold = sample_instance();
  no_gold.gold.reset();
  EXPECT_EQ(to_json_line(no_gold).find("gold"), std::string::npos);
}

TEST(JsonLines, ReserializesByteIdentically) {
  Gen gen(5);
  const std::vector<std::string> texts{"", "The cat", "我们喜欢猫", "ça \"va\"", "tab\there", "x\\y", "é"};
  for (int i = 0; i < 300; ++i) {
    WlacInstance inst;
    inst.id = std::to_string(gen.range(0, 100000));
    inst.source = gen.pick(texts);
    inst.left_context = gen.pick(texts);
    inst.right_context = gen.pick(texts);
    inst.typed = gen.pick(std::vector<std::string>{"c", "wo", "é", "x\"y"});
    if (gen.coin()) inst.gold = gen.pick(texts);
    inst.src_lang = "fr";
    inst.tgt_lang = gen.coin() ? "en" : "zh";
    const std::string line = to_json_line(inst);
    const auto parsed = parse_json_line(line);
    EXPECT_EQ(parsed, inst);
    EXPECT_EQ(to_json_line(parsed), line);
  }
}

TEST(JsonLines, RejectsMalformedInput) {
  EXPECT_THROW(parse_json_line("{"), Error);
  EXPECT_THROW(parse_json_line("[1]"), Error);
  EXPECT_THROW(parse_json_line(R"({"id":"1","source":"x"})"), Error);
  EXPECT_THROW(parse_json_line(R"({"id":"1","source":"x","typed":""})"), Error);
  EXPECT_EQ(parse_json_line(R"({"id":12,"source":"x","typed":"a"})").id, "12");
}

TEST(JsonLines, DatasetFileRoundTrip) {
  TempDir dir;
  std::vector<WlacInstance> items{sample_instance(), sample_instance()};
  items[1].id = "8";
  items[1].gold.reset();
  write_dataset(dir.file("d.jsonl"), items);
  EXPECT_EQ(read_dataset(dir.file("d.jsonl")), items);
  EXPECT_THROW(read_dataset(dir.file("missing.jsonl")), Error);
}

TEST(Utf8, DecodeEncodeRoundTrip) {
  const std::string text = "aé我\xF0\x9F\x98\x80";
  const auto cps = utf8::decode(text);
  ASSERT_EQ(cps.size(), 4u);
  EXPECT_EQ(utf8::encode(cps), text);
  EXPECT_EQ(utf8::length(text), 4u);
  EXPECT_EQ(utf8::prefix(text, 2), "aé");
  EXPECT_EQ(utf8::prefix(text, 10), text);
}

TEST(Utf8, CaseAndClasses) {
  EXPECT_EQ(utf8::to_lower("ÉCOLE Über ĞÝ"), "école über ğý");
  EXPECT_EQ(utf8::to_lower("ΣΟΦΙΑ Москва"), "σοφια москва");
  EXPECT_EQ(utf8::to_lower(U'Ÿ'), U'ÿ');
  EXPECT_TRUE(utf8::is_upper(U'Ä'));
  EXPECT_FALSE(utf8::is_upper(U'ſ'));
  EXPECT_TRUE(utf8::is_han(U'我'));
  EXPECT_FALSE(utf8::is_han(U'a'));
  EXPECT_TRUE(utf8::is_letter(U'我'));
  EXPECT_FALSE(utf8::is_letter(U'1'));
  EXPECT_EQ(utf8::trim("\t a b \n"), "a b");
  EXPECT_EQ(utf8::split_whitespace("  a  b\tc "), (std::vector<std::string>{"a", "b", "c"}));
}

}  // namespace
}  // namespace wlac
