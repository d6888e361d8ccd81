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

// Autoregressive translation model interface and its two implementations:
// a lexical (IBM Model 1) x bigram statistical model, and a scripted model
// for deterministic decoder tests.

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wlac/core.hpp"
#include "wlac/tokenization.hpp"

namespace wlac {

// Next-token distribution with a lazily computed ranking. Not thread-safe.
class StepDistribution {
 public:
  StepDistribution() = default;
  explicit StepDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::span<const double> probs() const { return probs_; }
  double prob(TokenId id) const { return probs_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return probs_.size(); }

  // The k most probable ids, highest first, lowest id first among ties.
  std::span<const TokenId> ranked(std::size_t k) const;

 private:
  std::vector<double> probs_;
  mutable std::vector<TokenId> order_;
  mutable std::size_t ranked_ = 0;
};

// A model with one source sentence bound. Returned references stay valid
// until the next call to next().
class SourceContext {
 public:
  virtual ~SourceContext() = default;
  virtual const StepDistribution& next(std::span<const TokenId> prefix) = 0;
};

class TranslationModel {
 public:
  virtual ~TranslationModel() = default;

  virtual const SubwordVocab& source_vocab() const = 0;
  virtual const SubwordVocab& target_vocab() const = 0;

  // Probability of every target id (EOS included) following `prefix`.
  // Non-negative, sums to 1, pure. Unknown ids throw.
  virtual std::vector<double> next_distribution(std::span<const TokenId> source,
                                                std::span<const TokenId> prefix) const = 0;

  // Binds a source sentence. The default wraps next_distribution; models
  // override it to reuse source-dependent work across decoding steps.
  virtual std::unique_ptr<SourceContext> bind(std::span<const TokenId> source) const;
};

struct TokenizedPair {
  std::vector<TokenId> source;
  std::vector<TokenId> target;
};

struct LexBigramOptions {
  int em_iterations = 5;
  double alpha = 0.1;          // add-alpha smoothing of the target bigram LM
  double mix_epsilon = 1e-4;   // floor added to the lexical term
};

struct ModelMetadata {
  std::string src_lang;
  std::string tgt_lang;
  std::optional<std::string> dialect_token;  // prepended to encoded sources
};

// p(e | x, prefix) ∝ bigram(e | last prefix token or BOS) ·
//                    (epsilon + 1/(|x|+1) Σ_j t(e | x_j)),  x_0 = NULL.
// For EOS the lexical factor is epsilon + 1/(|x|+1).
class LexBigramModel : public TranslationModel {
 public:
  // Sparse row: sorted column ids with values. A row flagged uniform spreads
  // its mass evenly over every non-EOS target id.
  struct Row {
    std::vector<TokenId> cols;
    std::vector<double> vals;
    bool uniform = false;
  };

  LexBigramModel(SubwordVocab source_vocab, SubwordVocab target_vocab, std::vector<Row> lexical,
                 std::vector<Row> bigram_counts, LexBigramOptions options, ModelMetadata metadata = {});

  static LexBigramModel load(const std::string& dir);
  void save(const std::string& dir) const;

  const SubwordVocab& source_vocab() const override { return source_vocab_; }
  const SubwordVocab& target_vocab() const override { return target_vocab_; }
  std::vector<double> next_distribution(std::span<const TokenId> source,
                                        std::span<const TokenId> prefix) const override;
  std::unique_ptr<SourceContext> bind(std::span<const TokenId> source) const override;

  // t(e|f); std::nullopt for f means the NULL source token.
  double lexical_prob(std::optional<TokenId> f, TokenId e) const;
  // bigram(v|u); std::nullopt for u means sentence start.
  double bigram_prob(std::optional<TokenId> u, TokenId v) const;

  const LexBigramOptions& options() const { return options_; }
  const ModelMetadata& metadata() const { return metadata_; }
  void set_metadata(ModelMetadata metadata) { metadata_ = std::move(metadata); }

  // Rows indexed by source id, NULL last.
  const std::vector<Row>& lexical_rows() const { return lexical_; }

 private:
  class Context;

  std::size_t null_row() const { return source_vocab_.size(); }
  std::size_t bos_row() const { return target_vocab_.size(); }

  SubwordVocab source_vocab_;
  SubwordVocab target_vocab_;
  std::vector<Row> lexical_;        // |source| + 1 rows
  std::vector<Row> bigram_counts_;  // |target| + 1 rows
  std::vector<double> bigram_totals_;
  LexBigramOptions options_;
  ModelMetadata metadata_;
};

// IBM Model 1 EM (uniform init over co-occurring target ids, NULL source
// token) plus an add-alpha target bigram LM. `log_likelihoods`, when given,
// receives the corpus log-likelihood before training and after each
// iteration.
LexBigramModel train_lexbigram(SubwordVocab source_vocab, SubwordVocab target_vocab,
                               std::span<const TokenizedPair> corpus, const LexBigramOptions& options,
                               std::vector<double>* log_likelihoods = nullptr);

// Σ_pairs Σ_j log( 1/(l+1) Σ_{i=0..l} t(e_j | f_i) ).
double corpus_log_likelihood(const LexBigramModel& model, std::span<const TokenizedPair> corpus);

// Explicit per-prefix distributions; a default covers unlisted prefixes.
// Source tokens are ignored.
class ScriptedModel : public TranslationModel {
 public:
  ScriptedModel(SubwordVocab vocab, std::vector<double> default_distribution);

  void set(std::vector<TokenId> prefix, std::vector<double> distribution);

  // Builds a distribution over `vocab` from (piece, probability) pairs;
  // unlisted pieces get zero.
  static std::vector<double> distribution(const SubwordVocab& vocab,
                                          std::initializer_list<std::pair<std::string_view, double>> entries);

  const SubwordVocab& source_vocab() const override { return vocab_; }
  const SubwordVocab& target_vocab() const override { return vocab_; }
  std::vector<double> next_distribution(std::span<const TokenId> source,
                                        std::span<const TokenId> prefix) const override;

 private:
  void check(const std::vector<double>& distribution) const;

  SubwordVocab vocab_;
  std::vector<double> default_;
  std::map<std::vector<TokenId>, std::vector<double>> table_;
};

}  // namespace wlac
