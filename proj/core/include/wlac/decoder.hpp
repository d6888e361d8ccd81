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

// Greedy, beam, top-K sampling and alternatives-at-a-position decoding.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wlac/core.hpp"
#include "wlac/model.hpp"

namespace wlac {

// Seedable generator with a fixed engine (mt19937_64) and fixed
// integer-to-real conversion, so draws are identical across platforms.
class RngState {
 public:
  explicit RngState(std::uint64_t seed = 0) : engine_(seed) {}

  // Independent stream for (seed, key), e.g. per instance id.
  static RngState derive(std::uint64_t seed, std::string_view key);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi); lo when lo == hi
  // Index drawn with probability proportional to weights[i].
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view key);

// Top-K restriction (ties to the lowest id) followed by w ∝ p^(1/temperature),
// renormalized. Pairs are (token, weight) in rank order.
std::vector<std::pair<TokenId, double>> sampling_weights(const StepDistribution& dist, int topk,
                                                         double temperature);
std::vector<std::pair<TokenId, double>> sampling_weights(std::span<const double> dist, int topk,
                                                         double temperature);

TokenId sample_step(const StepDistribution& dist, int topk, double temperature, RngState& rng);
TokenId sample_step(std::span<const double> dist, int topk, double temperature, RngState& rng);

Hypothesis greedy_decode(const TranslationModel& model, std::span<const TokenId> source, int max_len);

// Length-unnormalized beam search. Result sorted by score, ties by token order.
std::vector<Hypothesis> beam_decode(const TranslationModel& model, std::span<const TokenId> source,
                                    int beam_size, int num_hypotheses, int max_len);

// Teacher-forces `prefix`, branches into config.num_hypotheses continuations
// at the first free position, then completes each branch independently:
// without sampling, the most likely distinct branch tokens continued by beam
// search of config.beam_size (greedy for 1); with sampling, independent
// top-K draws at every step. Returned tokens exclude the prefix.
std::vector<Hypothesis> decode_alternatives(const TranslationModel& model, std::span<const TokenId> source,
                                            std::span<const TokenId> prefix, const DecodeConfig& config,
                                            RngState& rng);
std::vector<Hypothesis> decode_alternatives(SourceContext& context, const SubwordVocab& target_vocab,
                                            std::span<const TokenId> prefix, const DecodeConfig& config,
                                            RngState& rng);

}  // namespace wlac
