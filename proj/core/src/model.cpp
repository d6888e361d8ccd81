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

#include "wlac/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "wlac/error.hpp"

namespace wlac {

std::span<const TokenId> StepDistribution::ranked(std::size_t k) const {
  k = std::min(k, probs_.size());
  if (k > ranked_) {
    order_.resize(probs_.size());
    std::iota(order_.begin(), order_.end(), TokenId{0});
    auto better = [this](TokenId a, TokenId b) {
      const double pa = probs_[static_cast<std::size_t>(a)];
      const double pb = probs_[static_cast<std::size_t>(b)];
      return pa > pb || (pa == pb && a < b);
    };
    // Grow geometrically so repeated small requests do not resort.
    const std::size_t want = std::min(probs_.size(), std::max(k, 2 * ranked_));
    std::partial_sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(want), order_.end(), better);
    ranked_ = want;
  }
  return std::span<const TokenId>(order_.data(), k);
}

namespace {

class UncachedContext final : public SourceContext {
 public:
  UncachedContext(const TranslationModel& model, std::span<const TokenId> source)
      : model_(model), source_(source.begin(), source.end()) {}

  const StepDistribution& next(std::span<const TokenId> prefix) override {
    current_ = StepDistribution(model_.next_distribution(source_, prefix));
    return current_;
  }

 private:
  const TranslationModel& model_;
  std::vector<TokenId> source_;
  StepDistribution current_;
};

void check_tokens(const SubwordVocab& vocab, std::span<const TokenId> tokens, const char* side) {
  for (TokenId id : tokens) {
    if (!vocab.contains(id)) {
      fail(ErrorKind::kInvalidArgument, std::string("unknown ") + side + " token id " + std::to_string(id));
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::unique_ptr<SourceContext> TranslationModel::bind(std::span<const TokenId> source) const {
  return std::make_unique<UncachedContext>(*this, source);
}

// Caches the lexical factor for the bound source and one normalized
// distribution per previous token; the LexBigram distribution depends on
// the prefix only through its last token.
class LexBigramModel::Context final : public SourceContext {
 public:
  Context(const LexBigramModel& model, std::span<const TokenId> source) : model_(model) {
    check_tokens(model.source_vocab_, source, "source");
    const std::size_t vocab = model.target_vocab_.size();
    std::vector<double> sums(vocab, 0.0);
    const double uniform = vocab > 1 ? 1.0 / static_cast<double>(vocab - 1) : 0.0;
    auto add_row = [&](const Row& row) {
      if (row.uniform) {
        for (std::size_t e = 0; e < vocab; ++e) {
          if (static_cast<TokenId>(e) != SubwordVocab::kEosId) sums[e] += uniform;
        }
        return;
      }
      for (std::size_t i = 0; i < row.cols.size(); ++i) sums[static_cast<std::size_t>(row.cols[i])] += row.vals[i];
    };
    add_row(model.lexical_[model.null_row()]);
    for (TokenId f : source) add_row(model.lexical_[static_cast<std::size_t>(f)]);

    const double eps = model.options_.mix_epsilon;
    const double inv_len = 1.0 / static_cast<double>(source.size() + 1);
    lexical_.resize(vocab);
    for (std::size_t e = 0; e < vocab; ++e) lexical_[e] = eps + inv_len * sums[e];
    lexical_[static_cast<std::size_t>(SubwordVocab::kEosId)] = eps + inv_len;
  }

  const StepDistribution& next(std::span<const TokenId> prefix) override {
    check_tokens(model_.target_vocab_, prefix, "target");
    const std::size_t row = prefix.empty() ? model_.bos_row() : static_cast<std::size_t>(prefix.back());
    auto it = cache_.find(row);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(row, StepDistribution(compute(row))).first->second;
  }

  std::vector<double> compute(std::size_t row) const {
    const std::size_t vocab = model_.target_vocab_.size();
    const double alpha = model_.options_.alpha;
    const double denom = model_.bigram_totals_[row] + alpha * static_cast<double>(vocab);
    std::vector<double> p(vocab);
    for (std::size_t v = 0; v < vocab; ++v) p[v] = (alpha / denom) * lexical_[v];
    const Row& counts = model_.bigram_counts_[row];
    for (std::size_t i = 0; i < counts.cols.size(); ++i) {
      const auto v = static_cast<std::size_t>(counts.cols[i]);
      p[v] = ((counts.vals[i] + alpha) / denom) * lexical_[v];
    }
    double total = 0.0;
    for (double x : p) total += x;
    for (double& x : p) x /= total;
    return p;
  }

 private:
  const LexBigramModel& model_;
  std::vector<double> lexical_;
  std::unordered_map<std::size_t, StepDistribution> cache_;
};

LexBigramModel::LexBigramModel(SubwordVocab source_vocab, SubwordVocab target_vocab, std::vector<Row> lexical,
                               std::vector<Row> bigram_counts, LexBigramOptions options, ModelMetadata metadata)
    : source_vocab_(std::move(source_vocab)),
      target_vocab_(std::move(target_vocab)),
      lexical_(std::move(lexical)),
      bigram_counts_(std::move(bigram_counts)),
      options_(options),
      metadata_(std::move(metadata)) {
  if (lexical_.size() != source_vocab_.size() + 1) {
    fail(ErrorKind::kInvalidArgument, "lexical table must have one row per source id plus NULL");
  }
  if (bigram_counts_.size() != target_vocab_.size() + 1) {
    fail(ErrorKind::kInvalidArgument, "bigram table must have one row per target id plus BOS");
  }
  if (!(options_.alpha > 0.0) || !(options_.mix_epsilon > 0.0)) {
    fail(ErrorKind::kInvalidArgument, "alpha and mix_epsilon must be positive");
  }
  bigram_totals_.resize(bigram_counts_.size());
  for (std::size_t u = 0; u < bigram_counts_.size(); ++u) {
    const Row& r = bigram_counts_[u];
    bigram_totals_[u] = std::accumulate(r.vals.begin(), r.vals.end(), 0.0);
  }
}

std::vector<double> LexBigramModel::next_distribution(std::span<const TokenId> source,
                                                      std::span<const TokenId> prefix) const {
  Context ctx(*this, source);
  const StepDistribution& d = ctx.next(prefix);
  return std::vector<double>(d.probs().begin(), d.probs().end());
}

std::unique_ptr<SourceContext> LexBigramModel::bind(std::span<const TokenId> source) const {
  return std::make_unique<Context>(*this, source);
}

double LexBigramModel::lexical_prob(std::optional<TokenId> f, TokenId e) const {
  const std::size_t row = f ? static_cast<std::size_t>(*f) : null_row();
  if (row >= lexical_.size() || !target_vocab_.contains(e)) {
    fail(ErrorKind::kInvalidArgument, "lexical_prob: token id out of range");
  }
  const Row& r = lexical_[row];
  if (r.uniform) {
    return e == SubwordVocab::kEosId ? 0.0 : 1.0 / static_cast<double>(target_vocab_.size() - 1);
  }
  auto it = std::lower_bound(r.cols.begin(), r.cols.end(), e);
  if (it == r.cols.end() || *it != e) return 0.0;
  return r.vals[static_cast<std::size_t>(it - r.cols.begin())];
}

double LexBigramModel::bigram_prob(std::optional<TokenId> u, TokenId v) const {
  const std::size_t row = u ? static_cast<std::size_t>(*u) : bos_row();
  if (row >= bigram_counts_.size() || !target_vocab_.contains(v)) {
    fail(ErrorKind::kInvalidArgument, "bigram_prob: token id out of range");
  }
  const Row& r = bigram_counts_[row];
  double count = 0.0;
  auto it = std::lower_bound(r.cols.begin(), r.cols.end(), v);
  if (it != r.cols.end() && *it == v) count = r.vals[static_cast<std::size_t>(it - r.cols.begin())];
  const double alpha = options_.alpha;
  return (count + alpha) / (bigram_totals_[row] + alpha * static_cast<double>(target_vocab_.size()));
}

// Model directory layout:
//   source.vocab, target.vocab  one piece per line
//   lexical.tsv                 f<TAB>e<TAB>t(e|f); empty f is NULL; rows absent are uniform
//   bigram.tsv                  u<TAB>v<TAB>count; empty u is sentence start
//   model.json                  options and language metadata
void LexBigramModel::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create model directory " + dir + ": " + ec.message());
  const fs::path root(dir);
  source_vocab_.save((root / "source.vocab").string());
  target_vocab_.save((root / "target.vocab").string());

  {
    std::ofstream out(root / "lexical.tsv", std::ios::binary);
    if (!out) fail(ErrorKind::kIo, "cannot write lexical.tsv in " + dir);
    for (std::size_t f = 0; f < lexical_.size(); ++f) {
      const Row& r = lexical_[f];
      if (r.uniform) continue;
      const std::string fpiece = f == null_row() ? std::string() : source_vocab_.pieces()[f];
      for (std::size_t i = 0; i < r.cols.size(); ++i) {
        out << fpiece << '\t' << target_vocab_.piece(r.cols[i]) << '\t' << format_double(r.vals[i]) << '\n';
      }
    }
  }
  {
    std::ofstream out(root / "bigram.tsv", std::ios::binary);
    if (!out) fail(ErrorKind::kIo, "cannot write bigram.tsv in " + dir);
    for (std::size_t u = 0; u < bigram_counts_.size(); ++u) {
      const Row& r = bigram_counts_[u];
      const std::string upiece = u == bos_row() ? std::string() : target_vocab_.pieces()[u];
      for (std::size_t i = 0; i < r.cols.size(); ++i) {
        out << upiece << '\t' << target_vocab_.piece(r.cols[i]) << '\t' << format_double(r.vals[i]) << '\n';
      }
    }
  }
  nlohmann::ordered_json meta;
  meta["format"] = "lexbigram/1";
  meta["alpha"] = options_.alpha;
  meta["mix_epsilon"] = options_.mix_epsilon;
  meta["em_iterations"] = options_.em_iterations;
  meta["src_lang"] = metadata_.src_lang;
  meta["tgt_lang"] = metadata_.tgt_lang;
  if (metadata_.dialect_token) meta["dialect_token"] = *metadata_.dialect_token;
  std::ofstream out(root / "model.json", std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write model.json in " + dir);
  out << meta.dump(2) << '\n';
}

namespace {

struct TsvTriple {
  std::string a, b;
  double value;
};

std::vector<TsvTriple> read_triples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<TsvTriple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      fail(ErrorKind::kInvalidArgument, path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    char* end = nullptr;
    const std::string num = line.substr(t2 + 1);
    const double v = std::strtod(num.c_str(), &end);
    if (end == num.c_str()) {
      fail(ErrorKind::kInvalidArgument, path.string() + ":" + std::to_string(lineno) + ": bad number");
    }
    out.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), v});
  }
  return out;
}

TokenId lookup_piece(const SubwordVocab& vocab, const std::string& piece, const std::string& file) {
  auto id = vocab.find(piece);
  if (!id) fail(ErrorKind::kInvalidArgument, file + ": piece not in vocab: " + piece);
  return *id;
}

void push_sorted(LexBigramModel::Row& row, TokenId col, double val) {
  auto it = std::lower_bound(row.cols.begin(), row.cols.end(), col);
  const auto pos = it - row.cols.begin();
  if (it != row.cols.end() && *it == col) {
    row.vals[static_cast<std::size_t>(pos)] = val;
    return;
  }
  row.cols.insert(it, col);
  row.vals.insert(row.vals.begin() + pos, val);
}

}  // namespace

LexBigramModel LexBigramModel::load(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::is_directory(root)) fail(ErrorKind::kIo, "model directory not found: " + dir);
  SubwordVocab src = SubwordVocab::load((root / "source.vocab").string());
  SubwordVocab tgt = SubwordVocab::load((root / "target.vocab").string());

  std::ifstream meta_in(root / "model.json");
  if (!meta_in) fail(ErrorKind::kIo, "cannot open model.json in " + dir);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("bad model.json: ") + e.what());
  }
  LexBigramOptions options;
  options.alpha = meta.value("alpha", options.alpha);
  options.mix_epsilon = meta.value("mix_epsilon", options.mix_epsilon);
  options.em_iterations = meta.value("em_iterations", options.em_iterations);
  ModelMetadata metadata;
  metadata.src_lang = meta.value("src_lang", std::string());
  metadata.tgt_lang = meta.value("tgt_lang", std::string());
  if (meta.contains("dialect_token") && meta["dialect_token"].is_string()) {
    metadata.dialect_token = meta["dialect_token"].get<std::string>();
  }

  std::vector<Row> lexical(src.size() + 1);
  for (auto& r : lexical) r.uniform = true;
  for (const auto& t : read_triples(root / "lexical.tsv")) {
    const std::size_t f = t.a.empty() ? src.size() : static_cast<std::size_t>(lookup_piece(src, t.a, "lexical.tsv"));
    Row& row = lexical[f];
    row.uniform = false;
    push_sorted(row, lookup_piece(tgt, t.b, "lexical.tsv"), t.value);
  }
  std::vector<Row> bigram(tgt.size() + 1);
  for (const auto& t : read_triples(root / "bigram.tsv")) {
    const std::size_t u = t.a.empty() ? tgt.size() : static_cast<std::size_t>(lookup_piece(tgt, t.a, "bigram.tsv"));
    push_sorted(bigram[u], lookup_piece(tgt, t.b, "bigram.tsv"), t.value);
  }
  return LexBigramModel(std::move(src), std::move(tgt), std::move(lexical), std::move(bigram), options,
                        std::move(metadata));
}

namespace {

// Dense-indexed sparse lexical table used during EM.
struct EmTable {
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::size_t> row_of;  // cell -> f row
  std::vector<TokenId> col_of;      // cell -> e
  std::vector<double> prob;

  static std::uint64_t key(std::size_t f, TokenId e) {
    return (static_cast<std::uint64_t>(f) << 32) | static_cast<std::uint32_t>(e);
  }
  std::size_t cell(std::size_t f, TokenId e) {
    auto [it, inserted] = index.emplace(key(f, e), prob.size());
    if (inserted) {
      row_of.push_back(f);
      col_of.push_back(e);
      prob.push_back(0.0);
    }
    return it->second;
  }
};

// Per pair: for every target position, the cells of (f_i, e_j) for i = NULL, 1..l.
struct PairCells {
  std::size_t src_len = 0;
  std::vector<std::size_t> cells;  // target_len x (src_len + 1)
};

std::vector<LexBigramModel::Row> rows_from(const EmTable& table, std::size_t rows) {
  std::vector<LexBigramModel::Row> out(rows);
  for (auto& r : out) r.uniform = true;
  std::vector<std::vector<std::pair<TokenId, double>>> tmp(rows);
  for (std::size_t c = 0; c < table.prob.size(); ++c) tmp[table.row_of[c]].emplace_back(table.col_of[c], table.prob[c]);
  for (std::size_t f = 0; f < rows; ++f) {
    if (tmp[f].empty()) continue;
    std::sort(tmp[f].begin(), tmp[f].end());
    out[f].uniform = false;
    for (const auto& [e, p] : tmp[f]) {
      out[f].cols.push_back(e);
      out[f].vals.push_back(p);
    }
  }
  return out;
}

}  // namespace

LexBigramModel train_lexbigram(SubwordVocab source_vocab, SubwordVocab target_vocab,
                               std::span<const TokenizedPair> corpus, const LexBigramOptions& options,
                               std::vector<double>* log_likelihoods) {
  if (corpus.empty()) fail(ErrorKind::kInvalidArgument, "training corpus is empty");
  if (options.em_iterations < 0) fail(ErrorKind::kInvalidArgument, "em_iterations must be >= 0");
  for (const auto& pair : corpus) {
    check_tokens(source_vocab, pair.source, "source");
    check_tokens(target_vocab, pair.target, "target");
    for (TokenId e : pair.target) {
      if (e == SubwordVocab::kEosId) fail(ErrorKind::kInvalidArgument, "target sentences must not contain EOS");
    }
  }

  const std::size_t null_row = source_vocab.size();
  EmTable table;
  std::vector<PairCells> pair_cells;
  pair_cells.reserve(corpus.size());
  for (const auto& pair : corpus) {
    PairCells pc;
    pc.src_len = pair.source.size();
    pc.cells.reserve(pair.target.size() * (pc.src_len + 1));
    for (TokenId e : pair.target) {
      pc.cells.push_back(table.cell(null_row, e));
      for (TokenId f : pair.source) pc.cells.push_back(table.cell(static_cast<std::size_t>(f), e));
    }
    pair_cells.push_back(std::move(pc));
  }

  // Uniform over co-occurring target ids.
  std::vector<double> row_size(source_vocab.size() + 1, 0.0);
  for (std::size_t c = 0; c < table.prob.size(); ++c) row_size[table.row_of[c]] += 1.0;
  for (std::size_t c = 0; c < table.prob.size(); ++c) table.prob[c] = 1.0 / row_size[table.row_of[c]];

  auto log_likelihood = [&]() {
    double ll = 0.0;
    for (const auto& pc : pair_cells) {
      const std::size_t width = pc.src_len + 1;
      for (std::size_t j = 0; j * width < pc.cells.size(); ++j) {
        double z = 0.0;
        for (std::size_t i = 0; i < width; ++i) z += table.prob[pc.cells[j * width + i]];
        ll += std::log(z / static_cast<double>(width));
      }
    }
    return ll;
  };

  if (log_likelihoods) {
    log_likelihoods->clear();
    log_likelihoods->push_back(log_likelihood());
  }

  std::vector<double> counts(table.prob.size());
  std::vector<double> totals(source_vocab.size() + 1);
  for (int iter = 0; iter < options.em_iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(totals.begin(), totals.end(), 0.0);
    for (const auto& pc : pair_cells) {
      const std::size_t width = pc.src_len + 1;
      for (std::size_t j = 0; j * width < pc.cells.size(); ++j) {
        const std::size_t* cells = &pc.cells[j * width];
        double z = 0.0;
        for (std::size_t i = 0; i < width; ++i) z += table.prob[cells[i]];
        for (std::size_t i = 0; i < width; ++i) {
          const double delta = table.prob[cells[i]] / z;
          counts[cells[i]] += delta;
          totals[table.row_of[cells[i]]] += delta;
        }
      }
    }
    for (std::size_t c = 0; c < table.prob.size(); ++c) table.prob[c] = counts[c] / totals[table.row_of[c]];
    if (log_likelihoods) log_likelihoods->push_back(log_likelihood());
  }

  std::vector<LexBigramModel::Row> lexical = rows_from(table, source_vocab.size() + 1);

  const std::size_t bos = target_vocab.size();
  std::vector<std::map<TokenId, double>> bigram_maps(target_vocab.size() + 1);
  for (const auto& pair : corpus) {
    std::size_t prev = bos;
    for (TokenId e : pair.target) {
      bigram_maps[prev][e] += 1.0;
      prev = static_cast<std::size_t>(e);
    }
    bigram_maps[prev][SubwordVocab::kEosId] += 1.0;
  }
  std::vector<LexBigramModel::Row> bigram(target_vocab.size() + 1);
  for (std::size_t u = 0; u < bigram_maps.size(); ++u) {
    for (const auto& [v, c] : bigram_maps[u]) {
      bigram[u].cols.push_back(v);
      bigram[u].vals.push_back(c);
    }
  }
  return LexBigramModel(std::move(source_vocab), std::move(target_vocab), std::move(lexical), std::move(bigram),
                        options);
}

double corpus_log_likelihood(const LexBigramModel& model, std::span<const TokenizedPair> corpus) {
  double ll = 0.0;
  for (const auto& pair : corpus) {
    const double width = static_cast<double>(pair.source.size() + 1);
    for (TokenId e : pair.target) {
      double z = model.lexical_prob(std::nullopt, e);
      for (TokenId f : pair.source) z += model.lexical_prob(f, e);
      ll += std::log(z / width);
    }
  }
  return ll;
}

ScriptedModel::ScriptedModel(SubwordVocab vocab, std::vector<double> default_distribution)
    : vocab_(std::move(vocab)), default_(std::move(default_distribution)) {
  check(default_);
}

void ScriptedModel::check(const std::vector<double>& distribution) const {
  if (distribution.size() != vocab_.size()) {
    fail(ErrorKind::kInvalidArgument, "scripted distribution length " + std::to_string(distribution.size()) +
                                          " != vocab size " + std::to_string(vocab_.size()));
  }
  double total = 0.0;
  for (double p : distribution) {
    if (!(p >= 0.0)) fail(ErrorKind::kInvalidArgument, "scripted distribution has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorKind::kInvalidArgument, "scripted distribution does not sum to 1");
}

void ScriptedModel::set(std::vector<TokenId> prefix, std::vector<double> distribution) {
  check_tokens(vocab_, prefix, "target");
  check(distribution);
  table_[std::move(prefix)] = std::move(distribution);
}

std::vector<double> ScriptedModel::distribution(
    const SubwordVocab& vocab, std::initializer_list<std::pair<std::string_view, double>> entries) {
  std::vector<double> out(vocab.size(), 0.0);
  for (const auto& [piece, p] : entries) {
    auto id = vocab.find(piece);
    if (!id) fail(ErrorKind::kInvalidArgument, "piece not in vocab: " + std::string(piece));
    out[static_cast<std::size_t>(*id)] = p;
  }
  return out;
}

std::vector<double> ScriptedModel::next_distribution(std::span<const TokenId> source,
                                                     std::span<const TokenId> prefix) const {
  (void)source;
  check_tokens(vocab_, prefix, "target");
  auto it = table_.find(std::vector<TokenId>(prefix.begin(), prefix.end()));
  return it == table_.end() ? default_ : it->second;
}

}  // namespace wlac
