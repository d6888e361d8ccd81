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

#include "wlac/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "wlac/error.hpp"

namespace wlac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  return splitmix64(splitmix64(seed) ^ fnv1a(key));
}

RngState RngState::derive(std::uint64_t seed, std::string_view key) { return RngState(mix_seed(seed, key)); }

double RngState::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngState::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t RngState::categorical(std::span<const double> weights) {
  if (weights.empty()) fail(ErrorKind::kInvalidArgument, "categorical draw over no weights");
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = uniform() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (u < cum) return i;
  }
  // Rounding left u at the top edge; return the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

std::vector<std::pair<TokenId, double>> sampling_weights(const StepDistribution& dist, int topk,
                                                         double temperature) {
  if (!(temperature > 0.0)) fail(ErrorKind::kInvalidArgument, "temperature must be > 0");
  if (topk < 1) fail(ErrorKind::kInvalidArgument, "topk must be >= 1");
  const auto candidates = dist.ranked(static_cast<std::size_t>(topk));
  std::vector<std::pair<TokenId, double>> out;
  out.reserve(candidates.size());
  const double exponent = 1.0 / temperature;
  double total = 0.0;
  for (TokenId t : candidates) {
    const double w = exponent == 1.0 ? dist.prob(t) : std::pow(dist.prob(t), exponent);
    out.emplace_back(t, w);
    total += w;
  }
  // The candidates hold the whole support: at temperature 1 the weights are
  // the model distribution itself, already normalized.
  const std::size_t k = candidates.size();
  const bool whole_support = k == dist.size() || dist.prob(dist.ranked(k + 1)[k]) == 0.0;
  if (exponent == 1.0 && whole_support) return out;
  for (auto& [t, w] : out) w /= total;
  return out;
}

std::vector<std::pair<TokenId, double>> sampling_weights(std::span<const double> dist, int topk,
                                                         double temperature) {
  return sampling_weights(StepDistribution(std::vector<double>(dist.begin(), dist.end())), topk, temperature);
}

namespace {

TokenId draw(const std::vector<std::pair<TokenId, double>>& weights, RngState& rng) {
  std::vector<double> w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) w[i] = weights[i].second;
  return weights[rng.categorical(w)].first;
}

}  // namespace

TokenId sample_step(const StepDistribution& dist, int topk, double temperature, RngState& rng) {
  return draw(sampling_weights(dist, topk, temperature), rng);
}

TokenId sample_step(std::span<const double> dist, int topk, double temperature, RngState& rng) {
  return draw(sampling_weights(dist, topk, temperature), rng);
}

namespace {

// Working sequence = forced prefix followed by generated tokens.
class Sequence {
 public:
  explicit Sequence(std::span<const TokenId> prefix) : tokens_(prefix.begin(), prefix.end()), forced_(prefix.size()) {}

  std::span<const TokenId> all() const { return tokens_; }
  std::vector<TokenId> generated() const {
    return std::vector<TokenId>(tokens_.begin() + static_cast<std::ptrdiff_t>(forced_), tokens_.end());
  }
  void push(TokenId t) { tokens_.push_back(t); }
  std::size_t generated_size() const { return tokens_.size() - forced_; }

 private:
  std::vector<TokenId> tokens_;
  std::size_t forced_;
};

// Greedy continuation of `seq` for at most `steps` more tokens.
double greedy_continue(SourceContext& ctx, Sequence& seq, int steps) {
  double score = 0.0;
  for (int i = 0; i < steps; ++i) {
    const StepDistribution& d = ctx.next(seq.all());
    const TokenId t = d.ranked(1)[0];
    score += std::log(d.prob(t));
    if (t == SubwordVocab::kEosId) break;
    seq.push(t);
  }
  return score;
}

struct Beam {
  std::vector<TokenId> tokens;  // generated, relative to the forced prefix
  double score = 0.0;
};

bool hypothesis_before(const Beam& a, const Beam& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

// Beam search over continuations of prefix + start.tokens, at most `steps`
// further tokens.
std::vector<Beam> beam_search(SourceContext& ctx, std::span<const TokenId> prefix, Beam start, int beam_size,
                              int num_hypotheses, int steps) {
  std::vector<Beam> live{std::move(start)};
  std::vector<Beam> finished;
  std::vector<TokenId> work(prefix.begin(), prefix.end());

  struct Candidate {
    std::size_t beam;
    TokenId token;
    double prob;
    double score;
  };
  std::vector<Candidate> candidates;

  for (int step = 0; step < steps && !live.empty(); ++step) {
    candidates.clear();
    for (std::size_t b = 0; b < live.size(); ++b) {
      work.resize(prefix.size());
      work.insert(work.end(), live[b].tokens.begin(), live[b].tokens.end());
      const StepDistribution& d = ctx.next(work);
      for (TokenId t : d.ranked(static_cast<std::size_t>(beam_size))) {
        const double p = d.prob(t);
        if (p <= 0.0) break;
        candidates.push_back({b, t, p, live[b].score + std::log(p)});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
      if (x.score != y.score) return x.score > y.score;
      if (x.beam != y.beam) return live[x.beam].tokens < live[y.beam].tokens;
      return x.token < y.token;
    });
    if (candidates.size() > static_cast<std::size_t>(beam_size)) candidates.resize(static_cast<std::size_t>(beam_size));

    std::vector<Beam> next_live;
    for (const auto& c : candidates) {
      Beam nb{live[c.beam].tokens, c.score};
      if (c.token == SubwordVocab::kEosId) {
        finished.push_back(std::move(nb));
      } else {
        nb.tokens.push_back(c.token);
        next_live.push_back(std::move(nb));
      }
    }
    live = std::move(next_live);
  }

  for (auto& b : live) finished.push_back(std::move(b));
  std::sort(finished.begin(), finished.end(), hypothesis_before);
  if (finished.size() > static_cast<std::size_t>(num_hypotheses)) {
    finished.resize(static_cast<std::size_t>(num_hypotheses));
  }
  return finished;
}

void check_prefix(const SubwordVocab& vocab, std::span<const TokenId> prefix) {
  for (TokenId t : prefix) {
    if (!vocab.contains(t)) fail(ErrorKind::kInvalidArgument, "target prefix token " + std::to_string(t) + " is not in the vocab");
  }
}

}  // namespace

Hypothesis greedy_decode(const TranslationModel& model, std::span<const TokenId> source, int max_len) {
  if (max_len < 1) fail(ErrorKind::kInvalidArgument, "max_len must be >= 1");
  auto ctx = model.bind(source);
  Sequence seq({});
  Hypothesis h;
  h.score = greedy_continue(*ctx, seq, max_len);
  h.tokens = seq.generated();
  return h;
}

std::vector<Hypothesis> beam_decode(const TranslationModel& model, std::span<const TokenId> source, int beam_size,
                                    int num_hypotheses, int max_len) {
  if (beam_size < 1 || num_hypotheses < 1 || max_len < 1) {
    fail(ErrorKind::kInvalidArgument, "beam_size, num_hypotheses and max_len must be >= 1");
  }
  auto ctx = model.bind(source);
  std::vector<Hypothesis> out;
  for (auto& b : beam_search(*ctx, {}, Beam{}, beam_size, num_hypotheses, max_len)) {
    Hypothesis h;
    h.tokens = std::move(b.tokens);
    h.score = b.score;
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Hypothesis> decode_alternatives(SourceContext& ctx, const SubwordVocab& target_vocab,
                                            std::span<const TokenId> prefix, const DecodeConfig& config,
                                            RngState& rng) {
  config.validate();
  check_prefix(target_vocab, prefix);
  const bool constrained = !prefix.empty();
  const int steps = config.max_decode_len;
  const auto n = static_cast<std::size_t>(config.num_hypotheses);
  std::vector<Hypothesis> out;

  if (!config.sampling()) {
    std::vector<std::pair<TokenId, double>> branches;
    {
      const StepDistribution& d0 = ctx.next(prefix);
      for (TokenId t : d0.ranked(n)) {
        if (d0.prob(t) <= 0.0) break;
        branches.emplace_back(t, d0.prob(t));
      }
    }
    for (const auto& [t, p] : branches) {
      Hypothesis h;
      h.constrained = constrained;
      h.score = std::log(p);
      if (t != SubwordVocab::kEosId && steps > 1) {
        if (config.beam_size == 1) {
          Sequence seq(prefix);
          seq.push(t);
          h.score += greedy_continue(ctx, seq, steps - 1);
          h.tokens = seq.generated();
        } else {
          auto best = beam_search(ctx, prefix, Beam{{t}, h.score}, config.beam_size, 1, steps - 1);
          h.tokens = std::move(best.front().tokens);
          h.score = best.front().score;
        }
      } else if (t != SubwordVocab::kEosId) {
        h.tokens = {t};
      }
      out.push_back(std::move(h));
    }
    return out;
  }

  std::vector<std::pair<TokenId, double>> branch_weights;
  std::vector<double> branch_probs;
  {
    const StepDistribution& d0 = ctx.next(prefix);
    branch_weights = sampling_weights(d0, config.sampling_topk, config.temperature);
    for (const auto& [t, w] : branch_weights) branch_probs.push_back(d0.prob(t));
  }
  std::vector<double> w0(branch_weights.size());
  for (std::size_t i = 0; i < w0.size(); ++i) w0[i] = branch_weights[i].second;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pick = rng.categorical(w0);
    Hypothesis h;
    h.constrained = constrained;
    h.score = std::log(branch_probs[pick]);
    TokenId t = branch_weights[pick].first;
    Sequence seq(prefix);
    for (int step = 1; t != SubwordVocab::kEosId; ++step) {
      seq.push(t);
      if (step >= steps) break;
      const StepDistribution& d = ctx.next(seq.all());
      t = sample_step(d, config.sampling_topk, config.temperature, rng);
      h.score += std::log(d.prob(t));
    }
    h.tokens = seq.generated();
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Hypothesis> decode_alternatives(const TranslationModel& model, std::span<const TokenId> source,
                                            std::span<const TokenId> prefix, const DecodeConfig& config,
                                            RngState& rng) {
  auto ctx = model.bind(source);
  return decode_alternatives(*ctx, model.target_vocab(), prefix, config, rng);
}

}  // namespace wlac
