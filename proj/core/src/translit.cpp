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

#include "wlac/translit.hpp"

#include <fstream>
#include <unordered_set>

#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

PinyinTable::PinyinTable(std::unordered_map<char32_t, std::string> syllables)
    : syllables_(std::move(syllables)) {
  for (const auto& [cp, syl] : syllables_) {
    if (syl.empty()) fail(ErrorKind::kInvalidArgument, "empty pinyin syllable for " + utf8::encode(cp));
    for (char c : syl) {
      if (c < 'a' || c > 'z') {
        fail(ErrorKind::kInvalidArgument, "pinyin syllable must be lowercase ASCII: " + syl);
      }
    }
  }
}

PinyinTable PinyinTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open pinyin table: " + path);
  std::unordered_map<char32_t, std::string> syllables;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const std::u32string key = utf8::decode(std::string_view(line).substr(0, tab));
    if (tab == std::string::npos || key.size() != 1) {
      fail(ErrorKind::kInvalidArgument, path + ":" + std::to_string(lineno) + ": expected char<TAB>syllable");
    }
    syllables.emplace(key[0], line.substr(tab + 1));
  }
  return PinyinTable(std::move(syllables));
}

std::optional<std::string_view> PinyinTable::lookup(char32_t cp) const {
  auto it = syllables_.find(cp);
  if (it == syllables_.end()) return std::nullopt;
  return it->second;
}

std::string to_pinyin(const PinyinTable& table, std::string_view word) {
  std::string out;
  for (char32_t cp : utf8::decode(word)) {
    if (auto syl = table.lookup(cp)) {
      out += *syl;
    } else if (cp < 0x80) {
      out.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + 0x20 : cp));
    } else {
      out += utf8::encode(cp);
    }
  }
  return out;
}

std::vector<std::string> back_map(const PinyinTable& table, std::string_view key,
                                  std::span<const std::string> words) {
  std::vector<std::string> out;
  std::unordered_set<std::string_view> seen;
  for (const auto& w : words) {
    if (!seen.insert(w).second) continue;
    if (utf8::starts_with(to_pinyin(table, w), key)) out.push_back(w);
  }
  return out;
}

}  // namespace wlac
