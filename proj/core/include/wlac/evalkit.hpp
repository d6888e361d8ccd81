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

// Instance synthesis from parallel text, accuracy evaluation and parameter
// sweeps rendered in the Beam Size / Sampling / Top-K / Hypotheses /
// Accuracy / Runs layout.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wlac/completion.hpp"
#include "wlac/core.hpp"
#include "wlac/decoder.hpp"

namespace wlac {

struct ReferencePair {
  std::string source;
  std::string target;
};

// Two-column TSV, or two line-aligned files.
std::vector<ReferencePair> read_parallel_tsv(const std::string& path);
std::vector<ReferencePair> read_parallel_files(const std::string& source_path, const std::string& target_path);

struct SynthesisOptions {
  std::vector<std::pair<ContextCase, int>> per_case_counts;
  int min_typed = 1;
  int max_gap = 2;  // words dropped between each context and the gold word: uniform in [0, max_gap]
  std::string src_lang;
  std::string tgt_lang;
  const Lexicon* lexicon = nullptr;     // Han targets
  const PinyinTable* pinyin = nullptr;  // Han targets
  int max_attempts = 1000;              // per instance before giving up
};

std::vector<WlacInstance> synthesize_instances(std::span<const ReferencePair> references,
                                               const SynthesisOptions& options, RngState& rng);

// Toy French-like to English corpus in which each source word has two or
// three plausible translations with skewed probabilities.
std::vector<ReferencePair> make_ambiguous_corpus(std::size_t pairs, RngState& rng);

struct PairTrainingOptions {
  std::size_t source_vocab_size = 4000;
  std::size_t target_vocab_size = 4000;
  LexBigramOptions model;
  std::string src_lang;
  std::string tgt_lang;
  std::optional<std::string> dialect_token;
  std::shared_ptr<const Lexicon> lexicon;
  std::shared_ptr<const PinyinTable> pinyin;
};

struct TrainedPair {
  LanguagePair pair;
  std::vector<double> log_likelihoods;  // before training, then after each EM iteration
};

// Trains both subword vocabularies and a LexBigramModel on `corpus`.
TrainedPair train_language_pair(std::span<const ReferencePair> corpus, const PairTrainingOptions& options);

struct ResultRow {
  DecodeConfig config;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  int solved = 0;
  int total = 0;
  double mean_runs_used = 0.0;
  double wall_time = 0.0;     // seconds
  std::vector<char> correct;  // per instance, input order
};

// Exact string equality with gold; misses count as wrong. Instance streams
// are RngState::derive(seed, id).
ResultRow evaluate(const LanguagePair& pair, std::span<const WlacInstance> instances, const DecodeConfig& config,
                   std::uint64_t seed);

struct SweepSpec {
  std::vector<DecodeConfig> cells;
  std::vector<std::uint64_t> seeds{0};
  std::string dataset;
};

// JSON: {"dataset": ..., "seeds": [...], "grid": {axis: [values]}, "cells": [{...}],
//        "max_decode_len": n, "detok": bool}. Grid axes: beam_size, sampling_topk,
// num_hypotheses, max_runs, temperature (number or {"min","max"}).
SweepSpec parse_sweep_spec(std::string_view json_text, const DecodeConfig& base = {});

struct SweepResult {
  std::vector<ResultRow> rows;  // cell-major, seeds inner
  std::string tsv;
  std::string table;
};

SweepResult run_sweep(const LanguagePair& pair, std::span<const WlacInstance> instances, const SweepSpec& spec,
                      unsigned threads = 0);

std::string render_tsv(std::span<const ResultRow> rows);
std::string render_table(std::span<const ResultRow> rows);

}  // namespace wlac
