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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wlac/model.hpp"
#include "wlac/tokenization.hpp"

namespace wlac::testing {

// Vocabulary with the three specials followed by `pieces`.
inline SubwordVocab make_vocab(std::initializer_list<std::string_view> pieces) {
  std::vector<std::string> all{std::string(kUnkPiece), std::string(kEosPiece), std::string(kBoundaryMarker)};
  for (auto p : pieces) all.emplace_back(p);
  return SubwordVocab::from_pieces(std::move(all));
}

inline TokenId id_of(const SubwordVocab& vocab, std::string_view piece) { return *vocab.find(piece); }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("wlac-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(std::string_view name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool coin() { return range(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(range(0, static_cast<int>(items.size()) - 1))];
  }
  // Random probability vector with some exact zeros.
  std::vector<double> distribution(std::size_t n, double zero_rate = 0.0) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p) {
      x = real() < zero_rate ? 0.0 : real() + 1e-3;
      total += x;
    }
    if (total == 0.0) {
      p[0] = 1.0;
      total = 1.0;
    }
    for (auto& x : p) x /= total;
    return p;
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wlac::testing
