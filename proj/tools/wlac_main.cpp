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

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wlac/completion.hpp"
#include "wlac/error.hpp"
#include "wlac/evalkit.hpp"
#include "wlac/service.hpp"
#include "wlac/utf8.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoMatch = 3;

std::string data_dir() {
  if (const char* env = std::getenv("WLAC_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return WLAC_DEFAULT_DATA_DIR;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) wlac::fail(wlac::ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct HanResources {
  std::shared_ptr<const wlac::Lexicon> lexicon;
  std::shared_ptr<const wlac::PinyinTable> pinyin;
  std::string lexicon_path;
  std::string pinyin_path;
};

HanResources han_resources(const std::string& lang, std::string lexicon_path, std::string pinyin_path) {
  HanResources r;
  if (!wlac::is_cjk_language(lang)) return r;
  if (lexicon_path.empty()) lexicon_path = data_dir() + "/zh/lexicon.txt";
  if (pinyin_path.empty()) pinyin_path = data_dir() + "/zh/pinyin.tsv";
  r.lexicon = std::make_shared<wlac::Lexicon>(wlac::Lexicon::load(lexicon_path));
  r.pinyin = std::make_shared<wlac::PinyinTable>(wlac::PinyinTable::load(pinyin_path));
  r.lexicon_path = lexicon_path;
  r.pinyin_path = pinyin_path;
  return r;
}

std::vector<wlac::ReferencePair> read_references(const std::string& tsv, const std::string& source,
                                                 const std::string& target) {
  if (!tsv.empty()) return wlac::read_parallel_tsv(tsv);
  if (source.empty() || target.empty()) {
    wlac::fail(wlac::ErrorKind::kInvalidArgument, "give either --tsv or both --source and --target");
  }
  return wlac::read_parallel_files(source, target);
}

void add_decode_flags(CLI::App* app, wlac::DecodeConfig& c) {
  app->add_option("--beam-size", c.beam_size, "Beam size for deterministic decoding")->capture_default_str();
  app->add_option("--sampling-topk", c.sampling_topk, "Top-K sampling; 0 disables sampling")->capture_default_str();
  app->add_option("--num-hypotheses", c.num_hypotheses, "Alternatives per generation pass")->capture_default_str();
  app->add_option("--runs", c.max_runs, "Maximum completion runs")->capture_default_str();
  app->add_option("--temperature", c.temperature, "Sampling temperature")->capture_default_str();
  app->add_option("--temperature-max", c.temperature_max,
                  "Upper end of a per-run uniform temperature draw");
  app->add_option("--max-len", c.max_decode_len, "Maximum generated tokens")->capture_default_str();
  app->add_flag("--detok,!--no-detok", c.detok, "Detokenize before word matching")->capture_default_str();
}

struct TrainArgs {
  std::string tsv, source, target, src_lang, tgt_lang, out, dialect_token, lexicon, pinyin;
  std::size_t vocab_size = 4000;
  std::size_t src_vocab_size = 0;
  std::size_t tgt_vocab_size = 0;
  wlac::LexBigramOptions model;
};

int run_train(const TrainArgs& a) {
  const auto refs = read_references(a.tsv, a.source, a.target);
  const auto han = han_resources(a.tgt_lang, a.lexicon, a.pinyin);
  wlac::PairTrainingOptions opt;
  opt.source_vocab_size = a.src_vocab_size ? a.src_vocab_size : a.vocab_size;
  opt.target_vocab_size = a.tgt_vocab_size ? a.tgt_vocab_size : a.vocab_size;
  opt.model = a.model;
  opt.src_lang = a.src_lang;
  opt.tgt_lang = a.tgt_lang;
  if (!a.dialect_token.empty()) opt.dialect_token = a.dialect_token;
  opt.lexicon = han.lexicon;
  opt.pinyin = han.pinyin;
  const auto trained = wlac::train_language_pair(refs, opt);

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) wlac::fail(wlac::ErrorKind::kIo, "cannot create " + a.out + ": " + ec.message());
  static_cast<const wlac::LexBigramModel&>(*trained.pair.model).save(a.out);
  if (han.lexicon) {
    fs::copy_file(han.lexicon_path, fs::path(a.out) / "lexicon.txt", fs::copy_options::overwrite_existing);
    fs::copy_file(han.pinyin_path, fs::path(a.out) / "pinyin.tsv", fs::copy_options::overwrite_existing);
  }
  for (std::size_t i = 0; i < trained.log_likelihoods.size(); ++i) {
    std::fprintf(stderr, "em iteration %zu: log-likelihood %.6f\n", i, trained.log_likelihoods[i]);
  }
  std::printf("log_likelihood\t%.6f\n", trained.log_likelihoods.back());
  return kExitOk;
}

struct CompleteArgs {
  std::string model, instance, source, left, right, typed;
  std::uint64_t seed = 0;
  wlac::DecodeConfig decode;
  bool verbose = false;
};

wlac::WlacInstance instance_from(const CompleteArgs& a) {
  if (!a.instance.empty()) {
    const std::string_view trimmed = wlac::utf8::trim(a.instance);
    if (!trimmed.empty() && trimmed.front() == '{') return wlac::parse_json_line(trimmed);
    const auto all = wlac::read_dataset(a.instance);
    if (all.size() != 1) {
      wlac::fail(wlac::ErrorKind::kInvalidArgument, "--instance file must hold exactly one instance");
    }
    return all.front();
  }
  wlac::WlacInstance inst;
  inst.id = "cli";
  inst.source = a.source;
  inst.left_context = a.left;
  inst.right_context = a.right;
  inst.typed = a.typed;
  return inst;
}

int run_complete(const CompleteArgs& a) {
  a.decode.validate();
  const auto pair = wlac::load_language_pair(a.model);
  auto inst = instance_from(a);
  if (inst.src_lang.empty()) inst.src_lang = pair.src_lang;
  if (inst.tgt_lang.empty()) inst.tgt_lang = pair.tgt_lang;
  inst.validate();
  auto rng = wlac::RngState::derive(a.decode.seed.value_or(a.seed), inst.id);
  const auto outcome = wlac::complete(pair, inst, a.decode, rng);
  if (a.verbose) std::fprintf(stderr, "runs_used %d\n", outcome.runs_used);
  if (!outcome.prediction) {
    std::puts("NO_MATCH");
    return kExitNoMatch;
  }
  std::puts(outcome.prediction->word.c_str());
  return kExitOk;
}

struct EvalArgs {
  std::string model, dataset, spec, tsv;
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0;
  wlac::DecodeConfig decode;
};

int run_eval(const EvalArgs& a) {
  wlac::SweepSpec spec;
  if (!a.spec.empty()) {
    spec = wlac::parse_sweep_spec(read_file(a.spec), a.decode);
  } else {
    a.decode.validate();
    spec.cells = {a.decode};
  }
  if (!a.seeds.empty()) spec.seeds = a.seeds;
  std::string dataset = a.dataset.empty() ? spec.dataset : a.dataset;
  if (dataset.empty()) wlac::fail(wlac::ErrorKind::kInvalidArgument, "no dataset given (--dataset)");
  if (a.dataset.empty() && !a.spec.empty() && fs::path(dataset).is_relative()) {
    dataset = (fs::path(a.spec).parent_path() / dataset).string();
  }
  const auto pair = wlac::load_language_pair(a.model);
  const auto instances = wlac::read_dataset(dataset);
  const auto result = wlac::run_sweep(pair, instances, spec, a.threads);
  std::fputs(result.table.c_str(), stdout);
  if (!a.tsv.empty()) {
    std::ofstream out(a.tsv, std::ios::binary);
    if (!out) wlac::fail(wlac::ErrorKind::kIo, "cannot write " + a.tsv);
    out << result.tsv;
  }
  return kExitOk;
}

struct ServeArgs {
  std::vector<std::string> models;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t seed = 0;
  std::int64_t first_id = 1;
  bool legacy_keys = false;
  std::string default_source;
  int translate_beam_size = 1;
  wlac::DecodeConfig decode{1, 10, 10, 1.0, std::nullopt, 5, 64, std::nullopt, true};
};

int run_serve(const ServeArgs& a) {
  std::vector<std::string> dirs;
  for (const auto& m : a.models) {
    for (auto& part : wlac::utf8::split_whitespace(m)) dirs.push_back(part);
  }
  if (dirs.empty()) wlac::fail(wlac::ErrorKind::kInvalidArgument, "no model directory given (--model)");
  std::vector<wlac::LanguagePair> pairs;
  for (const auto& d : dirs) {
    if (!fs::is_directory(d)) wlac::fail(wlac::ErrorKind::kIo, "not a model directory: " + d);
    pairs.push_back(wlac::load_language_pair(d));
  }

  wlac::ServiceConfig config;
  config.suggest = a.decode;
  config.suggest.max_runs = 1;
  config.complete = a.decode;
  config.max_decode_len = a.decode.max_decode_len;
  config.translate_beam_size = a.translate_beam_size;
  config.seed = a.seed;
  config.first_id = a.first_id;
  config.legacy_keys = a.legacy_keys;
  config.default_source = a.default_source;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  wlac::Service service(std::move(pairs), config);
  wlac::HttpServer server(service);
  const int port = server.bind(a.host, a.port);
  if (port < 0) {
    std::fprintf(stderr, "error: cannot listen on %s:%d (address in use?)\n", a.host.c_str(), a.port);
    return kExitUsage;
  }
  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  waiter.detach();
  std::printf("listening on %s:%d\n", a.host.c_str(), port);
  std::fflush(stdout);
  server.run();
  return kExitOk;
}

struct MakeWlacArgs {
  std::string tsv, source, target, counts, out, src_lang = "src", tgt_lang = "en", lexicon, pinyin;
  int min_typed = 1;
  int max_gap = 2;
  std::uint64_t seed = 0;
};

std::vector<std::pair<wlac::ContextCase, int>> parse_counts(const std::string& text) {
  std::vector<std::pair<wlac::ContextCase, int>> out;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  for (const auto& item : wlac::utf8::split_whitespace(normalized)) {
    const auto eq = item.find_first_of("=:");
    if (eq == std::string::npos) wlac::fail(wlac::ErrorKind::kInvalidArgument, "bad count entry: " + item);
    const auto kase = wlac::parse_context_case(item.substr(0, eq));
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || n < 0) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      wlac::fail(wlac::ErrorKind::kInvalidArgument, "bad count entry: " + item);
    }
    out.emplace_back(kase, n);
  }
  if (out.empty()) wlac::fail(wlac::ErrorKind::kInvalidArgument, "--counts is empty");
  return out;
}

int run_make_wlac(const MakeWlacArgs& a) {
  const auto refs = read_references(a.tsv, a.source, a.target);
  const auto han = han_resources(a.tgt_lang, a.lexicon, a.pinyin);
  wlac::SynthesisOptions opt;
  opt.per_case_counts = parse_counts(a.counts);
  opt.min_typed = a.min_typed;
  opt.max_gap = a.max_gap;
  opt.src_lang = a.src_lang;
  opt.tgt_lang = a.tgt_lang;
  opt.lexicon = han.lexicon.get();
  opt.pinyin = han.pinyin.get();
  wlac::RngState rng(a.seed);
  const auto instances = wlac::synthesize_instances(refs, opt, rng);
  if (a.out.empty() || a.out == "-") {
    for (const auto& inst : instances) std::puts(wlac::to_json_line(inst).c_str());
  } else {
    wlac::write_dataset(a.out, instances);
  }
  return kExitOk;
}

struct GenCorpusArgs {
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_corpus(const GenCorpusArgs& a) {
  wlac::RngState rng(a.seed);
  const auto corpus = wlac::make_ambiguous_corpus(a.pairs, rng);
  std::ostringstream ss;
  for (const auto& r : corpus) ss << r.source << '\t' << r.target << '\n';
  if (a.out.empty() || a.out == "-") {
    std::fputs(ss.str().c_str(), stdout);
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) wlac::fail(wlac::ErrorKind::kIo, "cannot write " + a.out);
    out << ss.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-level auto-completion for computer-aided translation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wlac 0.1.0");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train subword vocabularies and a translation model");
  train_cmd->add_option("--tsv", train.tsv, "Parallel corpus, one source<TAB>target pair per line");
  train_cmd->add_option("--source", train.source, "Source side, one sentence per line");
  train_cmd->add_option("--target", train.target, "Target side, line-aligned with --source");
  train_cmd->add_option("--src-lang", train.src_lang, "Source language code")->required();
  train_cmd->add_option("--tgt-lang", train.tgt_lang, "Target language code")->required();
  train_cmd->add_option("--vocab-size", train.vocab_size, "Subword vocabulary size for both sides")
      ->capture_default_str();
  train_cmd->add_option("--src-vocab-size", train.src_vocab_size, "Source vocabulary size override");
  train_cmd->add_option("--tgt-vocab-size", train.tgt_vocab_size, "Target vocabulary size override");
  train_cmd->add_option("--em-iterations", train.model.em_iterations, "IBM Model 1 EM iterations")
      ->capture_default_str();
  train_cmd->add_option("--alpha", train.model.alpha, "Add-alpha smoothing of the bigram LM")->capture_default_str();
  train_cmd->add_option("--epsilon", train.model.mix_epsilon, "Lexical floor")->capture_default_str();
  train_cmd->add_option("--dialect-token", train.dialect_token, "Control token prepended to sources, e.g. >>fra<<");
  train_cmd->add_option("--lexicon", train.lexicon, "CJK lexicon for Chinese targets");
  train_cmd->add_option("--pinyin", train.pinyin, "Pinyin table for Chinese targets");
  train_cmd->add_option("--out", train.out, "Output model directory")->required();

  CompleteArgs comp;
  auto* comp_cmd = app.add_subcommand("complete", "Predict the word being typed");
  comp_cmd->add_option("--model", comp.model, "Model directory")->required();
  comp_cmd->add_option("--instance", comp.instance, "Instance as a JSON object or a one-line JSONL file");
  comp_cmd->add_option("--source", comp.source, "Source sentence");
  comp_cmd->add_option("--left", comp.left, "Left target context");
  comp_cmd->add_option("--right", comp.right, "Right target context");
  comp_cmd->add_option("--typed", comp.typed, "Typed characters of the unknown word");
  comp_cmd->add_option("--seed", comp.seed, "Random seed")->capture_default_str();
  comp_cmd->add_flag("--verbose", comp.verbose, "Report runs used on stderr");
  add_decode_flags(comp_cmd, comp.decode);

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate accuracy over a dataset and a parameter sweep");
  eval_cmd->add_option("--model", ev.model, "Model directory")->required();
  eval_cmd->add_option("--dataset", ev.dataset, "Instances in JSONL with gold words");
  eval_cmd->add_option("--spec", ev.spec, "Sweep spec JSON; otherwise the decode flags give one cell");
  eval_cmd->add_option("--seeds", ev.seeds, "Seeds, overriding the sweep spec file")->delimiter(',');
  eval_cmd->add_option("--threads", ev.threads, "Worker threads; 0 uses all cores");
  eval_cmd->add_option("--tsv", ev.tsv, "Write result rows as TSV");
  add_decode_flags(eval_cmd, ev.decode);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--model", serve.models, "Model directory; repeatable")->envname("WLAC_MODEL_DIR");
  serve_cmd->add_option("--host", serve.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Listen port; 0 picks a free port")
      ->envname("WLAC_PORT")
      ->capture_default_str();
  serve_cmd->add_option("--seed", serve.seed, "Server seed")->envname("WLAC_SEED")->capture_default_str();
  serve_cmd->add_option("--first-id", serve.first_id, "First response id")->capture_default_str();
  serve_cmd->add_flag("--legacy-keys", serve.legacy_keys, "Also emit \"compelection\" in /suggest");
  serve_cmd->add_option("--default-source", serve.default_source, "Tie-break for source auto-detection");
  serve_cmd->add_option("--translate-beam-size", serve.translate_beam_size, "Beam size for /translate")
      ->capture_default_str();
  add_decode_flags(serve_cmd, serve.decode);

  MakeWlacArgs mk;
  auto* mk_cmd = app.add_subcommand("make-wlac", "Synthesize WLAC instances from parallel references");
  mk_cmd->add_option("--references", mk.tsv, "Parallel references, source<TAB>target per line");
  mk_cmd->add_option("--source", mk.source, "Source side, one sentence per line");
  mk_cmd->add_option("--target", mk.target, "Target side, line-aligned with --source");
  mk_cmd->add_option("--counts", mk.counts, "Instances per context case, e.g. EMPTY=5,LEFT_ONLY=5")->required();
  mk_cmd->add_option("--min-typed", mk.min_typed, "Minimum typed characters")->capture_default_str();
  mk_cmd->add_option("--max-gap", mk.max_gap, "Maximum words dropped beside the gold word")->capture_default_str();
  mk_cmd->add_option("--src-lang", mk.src_lang, "Source language code")->capture_default_str();
  mk_cmd->add_option("--tgt-lang", mk.tgt_lang, "Target language code")->capture_default_str();
  mk_cmd->add_option("--lexicon", mk.lexicon, "CJK lexicon for Chinese targets");
  mk_cmd->add_option("--pinyin", mk.pinyin, "Pinyin table for Chinese targets");
  mk_cmd->add_option("--seed", mk.seed, "Random seed")->capture_default_str();
  mk_cmd->add_option("--out", mk.out, "Output JSONL; stdout when omitted");

  GenCorpusArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Write a synthetic ambiguous parallel corpus");
  gen_cmd->add_option("--pairs", gen.pairs, "Sentence pairs")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output TSV; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*comp_cmd) return run_complete(comp);
    if (*eval_cmd) return run_eval(ev);
    if (*serve_cmd) return run_serve(serve);
    if (*mk_cmd) return run_make_wlac(mk);
    if (*gen_cmd) return run_gen_corpus(gen);
  } catch (const wlac::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == wlac::ErrorKind::kInternal ? kExitInternal : kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
