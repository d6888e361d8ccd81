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

// Minimal UTF-8 helpers. Invalid sequences decode to U+FFFD.

#include <string>
#include <string_view>
#include <vector>

namespace wlac::utf8 {

std::u32string decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

// Byte offsets of every code point start, plus text.size() as a sentinel.
std::vector<std::size_t> boundaries(std::string_view text);

std::size_t length(std::string_view text);

// First `count` code points of `text` (all of it if shorter).
std::string prefix(std::string_view text, std::size_t count);

bool is_space(char32_t cp);
bool is_han(char32_t cp);
bool is_upper(char32_t cp);
bool is_letter(char32_t cp);
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);

bool starts_with(std::string_view text, std::string_view prefix);

}  // namespace wlac::utf8
