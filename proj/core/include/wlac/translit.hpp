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

// Toneless Pinyin romanization and back-mapping through a kept word list.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wlac {

// One fixed toneless reading per character.
class PinyinTable {
 public:
  PinyinTable() = default;
  explicit PinyinTable(std::unordered_map<char32_t, std::string> syllables);

  // UTF-8 TSV: char<TAB>syllable.
  static PinyinTable load(const std::string& path);

  std::optional<std::string_view> lookup(char32_t cp) const;
  std::size_t size() const { return syllables_.size(); }

 private:
  std::unordered_map<char32_t, std::string> syllables_;
};

// Characters missing from the table pass through (ASCII lowercased).
std::string to_pinyin(const PinyinTable& table, std::string_view word);

// Words of `words` (first occurrence order, deduplicated) whose romanization
// starts with `key`.
std::vector<std::string> back_map(const PinyinTable& table, std::string_view key,
                                  std::span<const std::string> words);

}  // namespace wlac
