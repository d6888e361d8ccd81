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

#include "wlac/evalkit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wlac/error.hpp"
#include "wlac/utf8.hpp"

namespace wlac {

std::vector<ReferencePair> read_parallel_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open parallel corpus: " + path);
  std::vector<ReferencePair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorKind::kInvalidArgument, path + ":" + std::to_string(lineno) + ": expected source<TAB>target");
    }
    out.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

std::vector<ReferencePair> read_parallel_files(const std::string& source_path, const std::string& target_path) {
  std::ifstream src(source_path, std::ios::binary);
  if (!src) fail(ErrorKind::kIo, "cannot open source corpus: " + source_path);
  std::ifstream tgt(target_path, std::ios::binary);
  if (!tgt) fail(ErrorKind::kIo, "cannot open target corpus: " + target_path);
  std::vector<ReferencePair> out;
  std::string s, t;
  while (true) {
    const bool hs = static_cast<bool>(std::getline(src, s));
    const bool ht = static_cast<bool>(std::getline(tgt, t));
    if (hs != ht) fail(ErrorKind::kInvalidArgument, "parallel files differ in line count");
    if (!hs) break;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (!t.empty() && t.back() == '\r') t.pop_back();
    out.push_back({s, t});
  }
  return out;
}

namespace {

int uniform_int(RngState& rng, int lo, int hi) {
  const double span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<int>(rng.uniform() * span));
}

bool has_letter(std::string_view word) {
  for (char32_t cp : utf8::decode(word)) {
    if (utf8::is_letter(cp)) return true;
  }
  return false;
}

std::string join_context(std::span<const std::string> words, std::string_view lang) {
  return detokenize(words, lang);
}

}  // namespace

std::vector<WlacInstance> synthesize_instances(std::span<const ReferencePair> references,
                                               const SynthesisOptions& options, RngState& rng) {
  if (references.empty()) fail(ErrorKind::kInvalidArgument, "no reference pairs to synthesize from");
  if (options.min_typed < 1) fail(ErrorKind::kInvalidArgument, "min_typed must be >= 1");
  if (options.max_gap < 0) fail(ErrorKind::kInvalidArgument, "max_gap must be >= 0");
  const bool han = script_for_language(options.tgt_lang) == TargetScript::kHan;
  if (han && (options.lexicon == nullptr || options.pinyin == nullptr)) {
    fail(ErrorKind::kInvalidArgument, "Han targets need a lexicon and a pinyin table");
  }

  std::vector<WlacInstance> out;
  for (const auto& [wanted_case, count] : options.per_case_counts) {
    for (int n = 0; n < count; ++n) {
      bool made = false;
      for (int attempt = 0; attempt < options.max_attempts && !made; ++attempt) {
        const auto& ref = references[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(references.size()) - 1))];
        const WordList words = word_tokenize(ref.target, options.tgt_lang, options.lexicon);

        std::vector<std::size_t> eligible;
        std::vector<std::string> keys(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
          if (!has_letter(words[i])) continue;
          keys[i] = han ? to_pinyin(*options.pinyin, words[i]) : words[i];
          if (utf8::length(keys[i]) > static_cast<std::size_t>(options.min_typed)) eligible.push_back(i);
        }
        if (eligible.empty()) continue;

        const std::size_t gold = eligible[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(eligible.size()) - 1))];
        const int key_len = static_cast<int>(utf8::length(keys[gold]));
        const int k = uniform_int(rng, options.min_typed, key_len - 1);
        const int left_gap = uniform_int(rng, 0, options.max_gap);
        const int right_gap = uniform_int(rng, 0, options.max_gap);

        const std::size_t left_end = gold >= static_cast<std::size_t>(left_gap) ? gold - left_gap : 0;
        const std::size_t right_begin = std::min(words.size(), gold + 1 + static_cast<std::size_t>(right_gap));
        std::span<const std::string> left(words.data(), left_end);
        std::span<const std::string> right(words.data() + right_begin, words.size() - right_begin);

        const bool want_left = wanted_case == ContextCase::kLeftOnly || wanted_case == ContextCase::kBoth;
        const bool want_right = wanted_case == ContextCase::kRightOnly || wanted_case == ContextCase::kBoth;
        if ((want_left && left.empty()) || (want_right && right.empty())) continue;

        WlacInstance inst;
        inst.id = std::to_string(out.size());
        inst.source = ref.source;
        inst.left_context = want_left ? join_context(left, options.tgt_lang) : std::string();
        inst.right_context = want_right ? join_context(right, options.tgt_lang) : std::string();
        inst.typed = utf8::prefix(keys[gold], static_cast<std::size_t>(k));
        inst.gold = words[gold];
        inst.src_lang = options.src_lang;
        inst.tgt_lang = options.tgt_lang;
        if (classify_context(inst) != wanted_case) continue;  // contexts that trim to nothing
        out.push_back(std::move(inst));
        made = true;
      }
      if (!made) {
        fail(ErrorKind::kInvalidArgument, "could not synthesize a " + std::string(context_case_name(wanted_case)) +
                                              " instance after " + std::to_string(options.max_attempts) +
                                              " attempts (references too short for min_typed/case?)");
      }
    }
  }
  return out;
}

namespace {

struct Choice {
  const char* word;
  double weight;
};

struct Concept {
  const char* source;
  std::vector<Choice> targets;
};

const std::vector<Concept>& determiners() {
  static const std::vector<Concept> c{
      {"le", {{"the", 0.75}, {"this", 0.25}}},
      {"un", {{"a", 0.8}, {"one", 0.2}}},
  };
  return c;
}

const std::vector<Concept>& adjectives() {
  static const std::vector<Concept> c{
      {"gros", {{"big", 0.55}, {"large", 0.3}, {"huge", 0.15}}},
      {"petit", {{"small", 0.5}, {"little", 0.35}, {"tiny", 0.15}}},
      {"rouge", {{"red", 0.7}, {"crimson", 0.3}}},
      {"vieux", {{"old", 0.6}, {"ancient", 0.25}, {"aged", 0.15}}},
      {"neuf", {{"new", 0.7}, {"fresh", 0.3}}},
      {"rapide", {{"quick", 0.5}, {"fast", 0.35}, {"rapid", 0.15}}},
      {"joli", {{"pretty", 0.5}, {"lovely", 0.3}, {"beautiful", 0.2}}},
      {"sombre", {{"dark", 0.6}, {"gloomy", 0.4}}},
  };
  return c;
}

const std::vector<Concept>& nouns() {
  static const std::vector<Concept> c{
      {"chat", {{"cat", 0.6}, {"kitten", 0.4}}},
      {"chien", {{"dog", 0.55}, {"hound", 0.25}, {"puppy", 0.2}}},
      {"maison", {{"house", 0.6}, {"home", 0.4}}},
      {"voiture", {{"car", 0.55}, {"automobile", 0.25}, {"vehicle", 0.2}}},
      {"livre", {{"book", 0.7}, {"novel", 0.3}}},
      {"jardin", {{"garden", 0.6}, {"yard", 0.4}}},
      {"homme", {{"man", 0.7}, {"guy", 0.3}}},
      {"femme", {{"woman", 0.7}, {"lady", 0.3}}},
      {"enfant", {{"child", 0.6}, {"kid", 0.4}}},
      {"ville", {{"city", 0.6}, {"town", 0.4}}},
      {"arbre", {{"tree", 0.8}, {"oak", 0.2}}},
      {"route", {{"road", 0.6}, {"street", 0.3}, {"path", 0.1}}},
  };
  return c;
}

const std::vector<Concept>& verbs() {
  static const std::vector<Concept> c{
      {"voit", {{"sees", 0.6}, {"watches", 0.3}, {"notices", 0.1}}},
      {"aime", {{"loves", 0.5}, {"likes", 0.4}, {"enjoys", 0.1}}},
      {"trouve", {{"finds", 0.7}, {"discovers", 0.3}}},
      {"porte", {{"carries", 0.5}, {"brings", 0.3}, {"holds", 0.2}}},
      {"construit", {{"builds", 0.6}, {"makes", 0.4}}},
      {"suit", {{"follows", 0.7}, {"chases", 0.3}}},
  };
  return c;
}

const std::vector<Concept>& prepositions() {
  static const std::vector<Concept> c{
      {"dans", {{"in", 0.7}, {"inside", 0.3}}},
      {"pres", {{"near", 0.6}, {"beside", 0.4}}},
  };
  return c;
}

const Concept& pick_concept(const std::vector<Concept>& pool, RngState& rng) {
  return pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
}

std::string pick_target(const Concept& c, RngState& rng) {
  std::vector<double> w;
  for (const auto& t : c.targets) w.push_back(t.weight);
  return c.targets[rng.categorical(w)].word;
}

}  // namespace

std::vector<ReferencePair> make_ambiguous_corpus(std::size_t pairs, RngState& rng) {
  std::vector<ReferencePair> out;
  out.reserve(pairs);
  for (std::size_t n = 0; n < pairs; ++n) {
    std::vector<std::string> src, tgt;
    auto emit = [&](const std::vector<Concept>& pool) {
      const Concept& c = pick_concept(pool, rng);
      src.emplace_back(c.source);
      tgt.push_back(pick_target(c, rng));
    };
    auto noun_phrase = [&]() {
      emit(determiners());
      if (rng.uniform() < 0.5) emit(adjectives());
      emit(nouns());
    };
    noun_phrase();
    emit(verbs());
    noun_phrase();
    if (rng.uniform() < 0.4) {
      emit(prepositions());
      noun_phrase();
    }
    src.emplace_back(".");
    tgt.emplace_back(".");
    tgt.front()[0] = static_cast<char>(tgt.front()[0] - 'a' + 'A');
    out.push_back({detokenize(src, "fr"), detokenize(tgt, "en")});
  }
  return out;
}

TrainedPair train_language_pair(std::span<const ReferencePair> corpus, const PairTrainingOptions& options) {
  if (corpus.empty()) fail(ErrorKind::kInvalidArgument, "training corpus is empty");
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  for (const auto& r : corpus) {
    sources.push_back(r.source);
    targets.push_back(r.target);
  }
  std::vector<std::string> controls;
  if (options.dialect_token) controls.push_back(*options.dialect_token);
  SubwordVocab src_vocab = train_subwords(sources, options.source_vocab_size, controls);
  SubwordVocab tgt_vocab = train_subwords(targets, options.target_vocab_size);

  std::optional<std::string_view> dialect;
  if (options.dialect_token) dialect = *options.dialect_token;
  std::vector<TokenizedPair> tokenized;
  tokenized.reserve(corpus.size());
  for (const auto& r : corpus) tokenized.push_back({encode(src_vocab, r.source, dialect), encode(tgt_vocab, r.target)});

  TrainedPair out;
  auto model = std::make_shared<LexBigramModel>(
      train_lexbigram(std::move(src_vocab), std::move(tgt_vocab), tokenized, options.model, &out.log_likelihoods));
  model->set_metadata({options.src_lang, options.tgt_lang, options.dialect_token});
  out.pair.model = std::move(model);
  out.pair.src_lang = options.src_lang;
  out.pair.tgt_lang = options.tgt_lang;
  out.pair.dialect_token = options.dialect_token;
  out.pair.lexicon = options.lexicon;
  out.pair.pinyin = options.pinyin;
  out.pair.policy.target_script = script_for_language(options.tgt_lang);
  out.pair.validate();
  return out;
}

ResultRow evaluate(const LanguagePair& pair, std::span<const WlacInstance> instances, const DecodeConfig& config,
                   std::uint64_t seed) {
  if (instances.empty()) fail(ErrorKind::kInvalidArgument, "no instances to evaluate");
  for (const auto& inst : instances) {
    if (!inst.gold) fail(ErrorKind::kInvalidArgument, "instance " + inst.id + " has no gold word");
  }
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.config = config;
  row.seed = seed;
  row.total = static_cast<int>(instances.size());
  row.correct.assign(instances.size(), 0);
  long runs = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    RngState rng = RngState::derive(seed, instances[i].id);
    const auto outcome = complete(pair, instances[i], config, rng);
    runs += outcome.runs_used;
    if (outcome.prediction && outcome.prediction->word == *instances[i].gold) {
      row.correct[i] = 1;
      ++row.solved;
    }
  }
  row.accuracy = static_cast<double>(row.solved) / static_cast<double>(row.total);
  row.mean_runs_used = static_cast<double>(runs) / static_cast<double>(row.total);
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

namespace {

using Json = nlohmann::json;

std::vector<int> int_axis(const Json& grid, const char* key, int fallback) {
  if (!grid.contains(key)) return {fallback};
  const Json& axis = grid.at(key);
  if (!axis.is_array() || axis.empty()) fail(ErrorKind::kInvalidArgument, std::string("grid axis must be a non-empty array: ") + key);
  std::vector<int> out;
  for (const auto& v : axis) {
    if (!v.is_number_integer()) fail(ErrorKind::kInvalidArgument, std::string("grid axis expects integers: ") + key);
    out.push_back(v.get<int>());
  }
  return out;
}

struct TemperatureSetting {
  double temperature;
  std::optional<double> temperature_max;
};

TemperatureSetting parse_temperature(const Json& v) {
  if (v.is_number()) return {v.get<double>(), std::nullopt};
  if (v.is_object() && v.contains("min") && v.contains("max")) {
    return {v.at("min").get<double>(), v.at("max").get<double>()};
  }
  fail(ErrorKind::kInvalidArgument, "temperature must be a number or {\"min\", \"max\"}");
}

DecodeConfig parse_cell(const Json& j, const DecodeConfig& base) {
  if (!j.is_object()) fail(ErrorKind::kInvalidArgument, "sweep cell must be an object");
  DecodeConfig c = base;
  c.beam_size = j.value("beam_size", c.beam_size);
  c.sampling_topk = j.value("sampling_topk", c.sampling_topk);
  c.num_hypotheses = j.value("num_hypotheses", c.num_hypotheses);
  c.max_runs = j.value("max_runs", c.max_runs);
  c.max_decode_len = j.value("max_decode_len", c.max_decode_len);
  c.detok = j.value("detok", c.detok);
  if (j.contains("temperature")) {
    const auto t = parse_temperature(j.at("temperature"));
    c.temperature = t.temperature;
    c.temperature_max = t.temperature_max;
  }
  if (j.contains("temperature_max")) c.temperature_max = j.at("temperature_max").get<double>();
  c.validate();
  return c;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view json_text, const DecodeConfig& base_config) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed sweep spec: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kInvalidArgument, "sweep spec must be a JSON object");

  SweepSpec spec;
  try {
    DecodeConfig base = base_config;
    base.max_decode_len = j.value("max_decode_len", base.max_decode_len);
    base.detok = j.value("detok", base.detok);
    spec.dataset = j.value("dataset", std::string());
    if (j.contains("seeds")) {
      spec.seeds.clear();
      for (const auto& s : j.at("seeds")) spec.seeds.push_back(s.get<std::uint64_t>());
    }
    if (spec.seeds.empty()) fail(ErrorKind::kInvalidArgument, "sweep spec needs at least one seed");

    if (j.contains("grid")) {
      const Json& grid = j.at("grid");
      if (!grid.is_object()) fail(ErrorKind::kInvalidArgument, "grid must be an object");
      std::vector<TemperatureSetting> temps{{base.temperature, base.temperature_max}};
      if (grid.contains("temperature")) {
        temps.clear();
        for (const auto& t : grid.at("temperature")) temps.push_back(parse_temperature(t));
        if (temps.empty()) fail(ErrorKind::kInvalidArgument, "temperature axis is empty");
      }
      for (int beam : int_axis(grid, "beam_size", base.beam_size)) {
        for (int topk : int_axis(grid, "sampling_topk", base.sampling_topk)) {
          for (int hyp : int_axis(grid, "num_hypotheses", base.num_hypotheses)) {
            for (int runs : int_axis(grid, "max_runs", base.max_runs)) {
              for (const auto& t : temps) {
                DecodeConfig c = base;
                c.beam_size = beam;
                c.sampling_topk = topk;
                c.num_hypotheses = hyp;
                c.max_runs = runs;
                c.temperature = t.temperature;
                c.temperature_max = t.temperature_max;
                c.validate();
                spec.cells.push_back(c);
              }
            }
          }
        }
      }
    }
    if (j.contains("cells")) {
      for (const auto& cell : j.at("cells")) spec.cells.push_back(parse_cell(cell, base));
    }
  } catch (const Json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("bad sweep spec: ") + e.what());
  }
  if (spec.cells.empty()) fail(ErrorKind::kInvalidArgument, "sweep spec defines no cells");
  return spec;
}

namespace {

std::string describe_cell(const DecodeConfig& c) {
  std::ostringstream os;
  os << "beam_size=" << c.beam_size << " sampling_topk=" << c.sampling_topk << " num_hypotheses="
     << c.num_hypotheses << " max_runs=" << c.max_runs << " temperature=" << c.temperature;
  if (c.temperature_max) os << ".." << *c.temperature_max;
  return os.str();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const LanguagePair& pair, std::span<const WlacInstance> instances, const SweepSpec& spec,
                      unsigned threads) {
  if (spec.cells.empty() || spec.seeds.empty()) fail(ErrorKind::kInvalidArgument, "empty sweep");
  const std::size_t jobs = spec.cells.size() * spec.seeds.size();
  std::vector<ResultRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::string failed_cell;

  auto worker = [&]() {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const DecodeConfig& cell = spec.cells[job / spec.seeds.size()];
      const std::uint64_t seed = spec.seeds[job % spec.seeds.size()];
      try {
        rows[job] = evaluate(pair, instances, cell, seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          failed_cell = describe_cell(cell) + " seed=" + std::to_string(seed);
        }
        next = jobs;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const Error& e) {
      fail(e.kind(), "sweep cell [" + failed_cell + "] failed: " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorKind::kInternal, "sweep cell [" + failed_cell + "] failed: " + e.what());
    }
  }

  SweepResult result;
  result.rows = std::move(rows);
  result.tsv = render_tsv(result.rows);
  result.table = render_table(result.rows);
  return result;
}

std::string render_tsv(std::span<const ResultRow> rows) {
  std::ostringstream os;
  os << "beam_size\tsampling_topk\tnum_hypotheses\tmax_runs\ttemperature\ttemperature_max\tseed\taccuracy\tsolved\t"
        "total\tmean_runs_used\twall_time_s\n";
  for (const auto& r : rows) {
    const auto& c = r.config;
    os << c.beam_size << '\t' << c.sampling_topk << '\t' << c.num_hypotheses << '\t' << c.max_runs << '\t'
       << fixed(c.temperature, 3) << '\t' << (c.temperature_max ? fixed(*c.temperature_max, 3) : std::string("-"))
       << '\t' << r.seed << '\t' << fixed(r.accuracy, 6) << '\t' << r.solved << '\t' << r.total << '\t'
       << fixed(r.mean_runs_used, 4) << '\t' << fixed(r.wall_time, 3) << '\n';
  }
  return os.str();
}

std::string render_table(std::span<const ResultRow> rows) {
  // Group consecutive rows of the same cell (seeds inner).
  struct Group {
    DecodeConfig config;
    std::vector<double> accuracies;
  };
  std::vector<Group> groups;
  for (const auto& r : rows) {
    if (groups.empty() || !(groups.back().config == r.config)) groups.push_back({r.config, {}});
    groups.back().accuracies.push_back(r.accuracy);
  }
  bool show_temperature = false;
  for (const auto& g : groups) {
    if (g.config.temperature != 1.0 || g.config.temperature_max) show_temperature = true;
  }

  std::vector<std::string> header{"Beam Size", "Sampling", "Top-K", "Hypotheses", "Accuracy", "Runs"};
  if (show_temperature) header.emplace_back("Temperature");
  std::vector<std::vector<std::string>> table{header};
  for (const auto& g : groups) {
    const auto& c = g.config;
    const double n = static_cast<double>(g.accuracies.size());
    double mean = 0.0;
    for (double a : g.accuracies) mean += a;
    mean /= n;
    std::string acc = fixed(mean, 4);
    if (g.accuracies.size() > 1) {
      double ss = 0.0;
      for (double a : g.accuracies) ss += (a - mean) * (a - mean);
      acc += " ± " + fixed(std::sqrt(ss / (n - 1.0)), 4);
    }
    std::vector<std::string> line{std::to_string(c.beam_size), c.sampling() ? "yes" : "N/A",
                                  c.sampling() ? std::to_string(c.sampling_topk) : "",
                                  std::to_string(c.num_hypotheses), acc, std::to_string(c.max_runs)};
    if (show_temperature) {
      line.push_back(c.temperature_max ? fixed(c.temperature, 2) + "-" + fixed(*c.temperature_max, 2)
                                       : fixed(c.temperature, 2));
    }
    table.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], utf8::length(line[i]));
  }
  std::ostringstream os;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      if (i > 0) os << "  ";
      os << table[r][i];
      if (i + 1 < table[r].size()) os << std::string(width[i] - utf8::length(table[r][i]), ' ');
    }
    os << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i > 0 ? 2 : 0);
      os << std::string(total, '-') << '\n';
    }
  }
  return os.str();
}

}  // namespace wlac
