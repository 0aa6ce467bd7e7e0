// tools/otcfst-main.cc

// Copyright 2026  The otcfst authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "otcfst/compose.h"
#include "otcfst/corruption.h"
#include "otcfst/emission.h"
#include "otcfst/error.h"
#include "otcfst/fst-io.h"
#include "otcfst/graphs.h"
#include "otcfst/loss.h"
#include "otcfst/oracle.h"
#include "otcfst/rng.h"
#include "otcfst/toy.h"

using json = nlohmann::ordered_json;
using namespace otcfst;

namespace {

constexpr char kVersion[] = "0.1.0";

std::string FormatSig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

std::vector<std::string> SplitTokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Every run that writes files also records how it was invoked, so outputs
// can be reproduced byte for byte (modulo the timestamps below).
struct Manifest {
  std::string subcommand;
  json config = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::string explicit_path;

  void Write() {
    std::string path = explicit_path;
    if (path.empty()) {
      if (outputs.empty()) return;  // stdout-only run
      path = outputs.front() + ".manifest.json";
    }
    json m;
    m["tool"] = "otcfst";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    auto now = std::chrono::system_clock::now();
    m["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
            .count();
    m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    WriteFile(path, m.dump(2) + "\n");
  }
};

// --seed, falling back to the OTC_SEED environment variable.
std::uint64_t DefaultSeed(const CLI::Option* seed_opt, std::uint64_t value) {
  if (seed_opt->count() > 0) return value;
  if (const char* env = std::getenv("OTC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error("OTC_SEED is not an integer");
    }
  }
  return value;
}

void Emit(const std::string& output_path, const std::string& content,
          Manifest& manifest) {
  if (output_path.empty()) {
    std::cout << content;
  } else {
    WriteFile(output_path, content);
    manifest.outputs.push_back(output_path);
  }
}

struct VocabArgs {
  std::string vocab_path;
  std::string lexicon_path;

  Vocabulary LoadVocab() const { return Vocabulary::FromFile(vocab_path); }
  Lexicon LoadLexicon(const Vocabulary& vocab) const {
    return lexicon_path.empty() ? Lexicon::Identity(vocab)
                                : Lexicon::FromFile(lexicon_path, vocab);
  }
};

struct TranscriptArgs {
  std::string inline_text;
  std::string file;

  std::string Text() const {
    if (!file.empty()) {
      auto lines = ReadLines(file);
      return lines.empty() ? "" : lines.front();
    }
    return inline_text;
  }
};

StarMode ParseStarMode(const std::string& s) {
  if (s == "average") return StarMode::kAverage;
  if (s == "dedicated") return StarMode::kDedicated;
  throw Error("unknown star mode '" + s + "'");
}

// ---- build-graph ----------------------------------------------------------

struct BuildGraphArgs {
  std::string type;
  VocabArgs vocab;
  TranscriptArgs transcript;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool include_star = false;
  std::string emissions_path;
  std::string star_mode = "average";
  std::string format = "text";
  std::string output;
  std::string manifest_path;
};

int RunBuildGraph(const BuildGraphArgs& args) {
  Manifest manifest;
  manifest.subcommand = "build-graph";
  manifest.explicit_path = args.manifest_path;
  manifest.config = {{"type", args.type},
                     {"format", args.format},
                     {"include-star", args.include_star},
                     {"lambda1", args.lambda1},
                     {"lambda2", args.lambda2}};

  Wfst graph;
  std::vector<std::string> isyms, osyms;

  auto with_vocab = [&]() {
    Vocabulary v = args.vocab.LoadVocab();
    manifest.inputs.push_back(args.vocab.vocab_path);
    return v;
  };

  if (args.type == "ctc-topo") {
    Vocabulary v = with_vocab();
    graph = BuildCtcTopology(v, args.include_star);
    isyms = osyms = v.LabelNames();
  } else if (args.type == "lexicon") {
    Vocabulary v = with_vocab();
    Lexicon lex = args.vocab.LoadLexicon(v);
    if (!args.vocab.lexicon_path.empty())
      manifest.inputs.push_back(args.vocab.lexicon_path);
    graph = BuildLexiconFst(lex, v, args.include_star);
    isyms = v.LabelNames();
    osyms = lex.WordNames();
  } else if (args.type == "linear-g" || args.type == "otc-g") {
    // word table: lexicon if given, identity over the vocabulary if given,
    // otherwise derived from the transcript tokens in appearance order
    Lexicon lex;
    if (!args.vocab.vocab_path.empty()) {
      Vocabulary v = with_vocab();
      lex = args.vocab.LoadLexicon(v);
      if (!args.vocab.lexicon_path.empty())
        manifest.inputs.push_back(args.vocab.lexicon_path);
    } else {
      for (const std::string& tok : SplitTokens(args.transcript.Text()))
        if (!lex.FindWord(tok)) lex.AddWord(tok, {1});
    }
    Transcript y = lex.ParseTranscript(args.transcript.Text());
    if (args.type == "linear-g")
      graph = BuildLinearG(y);
    else
      graph = BuildOtcG(y, PenaltyPair{args.lambda1, args.lambda2},
                        lex.star_word_id());
    isyms = osyms = lex.WordNames();
  } else if (args.type == "emission") {
    Vocabulary v = with_vocab();
    StarMode mode = ParseStarMode(args.star_mode);
    EmissionMatrix e = ReadEmissionTsvFile(args.emissions_path, v, mode);
    manifest.inputs.push_back(args.emissions_path);
    graph = BuildEmissionFst(e, v, mode, args.include_star);
    isyms = osyms = v.LabelNames();
  } else {
    throw Error("unknown graph type '" + args.type + "'");
  }

  std::string text = args.format == "dot" ? WriteDot(graph, &isyms, &osyms)
                                          : WriteFstText(graph);
  Emit(args.output, text, manifest);
  manifest.Write();
  return 0;
}

// ---- compose / total-weight / convert --------------------------------------

struct ComposeArgs {
  std::string a_path, b_path;
  bool connect = false;
  std::string format = "text";
  std::string output;
  std::string manifest_path;
};

int RunCompose(const ComposeArgs& args) {
  Manifest manifest;
  manifest.subcommand = "compose";
  manifest.explicit_path = args.manifest_path;
  manifest.config = {{"connect", args.connect}, {"format", args.format}};
  manifest.inputs = {args.a_path, args.b_path};

  Wfst a = ReadFstText(ReadFile(args.a_path));
  Wfst b = ReadFstText(ReadFile(args.b_path));
  Wfst c = Compose(a, b);
  if (args.connect) c = Connect(c);
  Emit(args.output, args.format == "dot" ? WriteDot(c) : WriteFstText(c),
       manifest);
  manifest.Write();
  return 0;
}

int RunTotalWeight(const std::string& path) {
  Wfst w = ReadFstText(ReadFile(path));
  double total = TotalWeight(w);
  std::cout << FormatSig6(total) << "\n";
  if (total == kLogZero) {
    std::cerr << "no start-to-final path\n";
    return 1;
  }
  return 0;
}

struct ConvertArgs {
  std::string input;
  std::string to = "dot";
  VocabArgs vocab;
  std::string output;
  std::string manifest_path;
};

int RunConvert(const ConvertArgs& args) {
  Manifest manifest;
  manifest.subcommand = "convert";
  manifest.explicit_path = args.manifest_path;
  manifest.config = {{"to", args.to}};
  manifest.inputs = {args.input};

  Wfst w = ReadFstText(ReadFile(args.input));
  std::string text;
  if (args.to == "text") {
    text = WriteFstText(w);
  } else if (args.to == "dot") {
    std::vector<std::string> syms;
    if (!args.vocab.vocab_path.empty()) {
      syms = args.vocab.LoadVocab().LabelNames();
      manifest.inputs.push_back(args.vocab.vocab_path);
    }
    text = WriteDot(w, syms.empty() ? nullptr : &syms,
                    syms.empty() ? nullptr : &syms);
  } else {
    throw Error("unknown target format '" + args.to + "'");
  }
  Emit(args.output, text, manifest);
  manifest.Write();
  return 0;
}

// ---- loss -------------------------------------------------------------------

struct LossArgs {
  std::string emissions_path;
  VocabArgs vocab;
  TranscriptArgs transcript;
  std::string mode = "ctc";
  std::string star_mode = "average";
  PenaltySchedule schedule;
  int epoch = 0;
  bool print_grad = false;
  std::string grad_out;
  bool verify = false;
  std::string manifest_path;
};

int RunLoss(const LossArgs& args) {
  Manifest manifest;
  manifest.subcommand = "loss";
  manifest.explicit_path = args.manifest_path;
  manifest.config = {{"mode", args.mode},
                     {"star-mode", args.star_mode},
                     {"beta1", args.schedule.beta1},
                     {"tau1", args.schedule.tau1},
                     {"beta2", args.schedule.beta2},
                     {"tau2", args.schedule.tau2},
                     {"epoch", args.epoch},
                     {"verify", args.verify}};
  manifest.inputs = {args.emissions_path, args.vocab.vocab_path};

  LossConfig cfg;
  cfg.vocab = args.vocab.LoadVocab();
  cfg.lexicon = args.vocab.LoadLexicon(cfg.vocab);
  cfg.mode = args.mode == "otc" ? LossMode::kOtc : LossMode::kCtc;
  cfg.star_mode = ParseStarMode(args.star_mode);
  cfg.schedule = args.schedule;

  EmissionMatrix e =
      ReadEmissionTsvFile(args.emissions_path, cfg.vocab, cfg.star_mode);
  Transcript y = cfg.lexicon.ParseTranscript(args.transcript.Text());

  LossResult r = cfg.mode == LossMode::kOtc ? OtcLoss(e, y, cfg, args.epoch)
                                            : CtcLoss(e, y, cfg);
  std::cout << "nll " << FormatSig6(r.nll) << "\n";

  if (r.no_path) {
    std::cerr << "no feasible alignment (transcript needs more frames than "
                 "available)\n";
    return 1;
  }

  if (args.print_grad || !args.grad_out.empty()) {
    std::ostringstream os;
    for (int c = 0; c < e.cols(); ++c)
      os << (c ? "\t" : "")
         << cfg.vocab.NameOf(cfg.vocab.LabelOfCol(c, cfg.star_mode));
    os << "\n";
    for (int t = 0; t < e.frames(); ++t) {
      for (int c = 0; c < e.cols(); ++c)
        os << (c ? "\t" : "") << FormatSig6(r.grad(t, c));
      os << "\n";
    }
    Emit(args.grad_out, os.str(), manifest);
  }

  if (args.verify) {
    double brute = BrutePosterior(e, y, cfg, args.epoch);
    PenaltyPair p;
    if (cfg.mode == LossMode::kOtc) p = PenaltyAt(cfg.schedule, args.epoch);
    Wfst lattice =
        Compose(BuildEmissionFst(e, cfg.vocab, cfg.star_mode,
                                 cfg.mode == LossMode::kOtc),
                BuildTrainingGraph(cfg, y, p));
    double path_sum = kLogZero;
    for (const auto& path : EnumeratePaths(lattice, 10000000))
      path_sum = LogAdd(path_sum, path.weight);
    for (double oracle : {-brute, -path_sum}) {
      double rel = std::abs(r.nll - oracle) /
                   std::max({1.0, std::abs(r.nll), std::abs(oracle)});
      if (!(rel <= 1e-8)) {
        std::cerr << "verification failed: nll " << FormatSig6(r.nll)
                  << " vs oracle " << FormatSig6(oracle) << "\n";
        return 1;
      }
    }
    std::cerr << "verified against both oracles\n";
  }
  manifest.Write();
  return 0;
}

// ---- corrupt ----------------------------------------------------------------

struct CorruptArgs {
  std::string input;
  std::string output;
  std::string report;
  double p_sub = 0.0, p_ins = 0.0, p_del = 0.0;
  double rate = -1.0;
  std::string error_type = "mix";
  std::string words_path;
  std::uint64_t seed = 0;
  std::string manifest_path;
};

int RunCorrupt(const CorruptArgs& args, const CLI::Option* seed_opt) {
  Manifest manifest;
  manifest.subcommand = "corrupt";
  manifest.explicit_path = args.manifest_path;

  ErrorSpec spec;
  if (args.rate >= 0.0) {
    spec = MakeErrorSpec(args.error_type, args.rate, 0);
  } else {
    spec.p_sub = args.p_sub;
    spec.p_ins = args.p_ins;
    spec.p_del = args.p_del;
  }
  spec.seed = DefaultSeed(seed_opt, args.seed);

  manifest.config = {{"p-sub", spec.p_sub},
                     {"p-ins", spec.p_ins},
                     {"p-del", spec.p_del},
                     {"seed", spec.seed}};
  manifest.inputs = {args.input};

  std::vector<std::string> lines = ReadLines(args.input);

  // token table: the word list file if given, otherwise the distinct input
  // tokens in sorted order
  std::vector<std::string> words;
  if (!args.words_path.empty()) {
    for (const std::string& line : ReadLines(args.words_path))
      for (const std::string& tok : SplitTokens(line)) words.push_back(tok);
    manifest.inputs.push_back(args.words_path);
  } else {
    std::set<std::string> distinct;
    for (const std::string& line : lines)
      for (const std::string& tok : SplitTokens(line)) distinct.insert(tok);
    words.assign(distinct.begin(), distinct.end());
  }
  std::map<std::string, Label> id_of;
  std::vector<Label> pool;
  std::vector<std::string> name_of(1);  // index 0 unused
  for (const std::string& w : words)
    if (id_of.emplace(w, static_cast<Label>(name_of.size())).second) {
      pool.push_back(static_cast<Label>(name_of.size()));
      name_of.push_back(w);
    }

  std::string out_text;
  json utt_reports = json::array();
  CorruptionReport total;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<Label> ids;
    for (const std::string& tok : SplitTokens(lines[i])) {
      auto it = id_of.find(tok);
      if (it == id_of.end())
        throw Error("token '" + tok + "' missing from the word list");
      ids.push_back(it->second);
    }
    auto [corrupted, rep] = CorruptTranscript(ids, spec, pool, i);
    std::string line;
    for (std::size_t k = 0; k < corrupted.size(); ++k)
      line += (k ? " " : "") + name_of[corrupted[k]];
    out_text += line + "\n";

    total.substituted += rep.substituted;
    total.inserted += rep.inserted;
    total.deleted += rep.deleted;
    total.input_tokens += rep.input_tokens;
    total.output_tokens += rep.output_tokens;
    utt_reports.push_back({{"utt", i},
                           {"substituted", rep.substituted},
                           {"inserted", rep.inserted},
                           {"deleted", rep.deleted},
                           {"input_tokens", rep.input_tokens},
                           {"output_tokens", rep.output_tokens}});
  }
  WriteFile(args.output, out_text);
  manifest.outputs.push_back(args.output);

  double denom = std::max(1, total.input_tokens);
  json report = {{"spec",
                  {{"p_sub", spec.p_sub},
                   {"p_ins", spec.p_ins},
                   {"p_del", spec.p_del},
                   {"seed", spec.seed}}},
                 {"aggregate",
                  {{"substituted", total.substituted},
                   {"inserted", total.inserted},
                   {"deleted", total.deleted},
                   {"input_tokens", total.input_tokens},
                   {"output_tokens", total.output_tokens},
                   {"realized_sub_rate", total.substituted / denom},
                   {"realized_ins_rate", total.inserted / denom},
                   {"realized_del_rate", total.deleted / denom}}},
                 {"utterances", utt_reports}};
  if (!args.report.empty()) {
    WriteFile(args.report, report.dump(2) + "\n");
    manifest.outputs.push_back(args.report);
  }
  std::cout << "corrupted " << lines.size() << " utterances; realized rates "
            << FormatSig6(total.substituted / denom) << " sub, "
            << FormatSig6(total.inserted / denom) << " ins, "
            << FormatSig6(total.deleted / denom) << " del\n";
  manifest.Write();
  return 0;
}

// ---- train-toy / eval --------------------------------------------------------

struct TrainToyArgs {
  BenchmarkConfig bench;
  std::string mode = "ctc";
  std::string star_mode;
  std::string error_type = "mix";
  double error_rate = 0.0;
  std::string results;
  std::string model_out;
  std::string sweep;
  std::string manifest_path;
};

json RunToJson(const BenchmarkRun& run) {
  return json{{"mode", run.mode},
              {"error_type", run.error_type},
              {"error_rate", run.error_rate},
              {"realized_rate", run.realized_rate},
              {"ter", run.ter},
              {"skipped", run.skipped},
              {"train_seconds", run.train_seconds},
              {"loss_trace", run.loss_trace}};
}

// Re-runs training (same derived streams as RunToyBenchmark) to obtain the
// final parameters for dumping.
ModelParams TrainForDump(const BenchmarkConfig& bench, LossMode mode,
                         const std::string& error_type, double rate) {
  Vocabulary vocab = MakeToyVocabulary(bench.units);
  DatasetParams params = bench.data;
  params.num_utts = bench.train_utts + bench.heldout_utts;
  params.seed = SplitSeed(bench.seed, 1);
  ToyDataset all = GenerateDataset(vocab, params);
  ToyDataset train_data;
  train_data.params = params;
  train_data.prototypes = all.prototypes;
  train_data.utterances.assign(all.utterances.begin(),
                               all.utterances.begin() + bench.train_utts);
  std::vector<Label> pool;
  for (int i = 0; i < vocab.num_units(); ++i) pool.push_back(vocab.unit_id(i));
  ErrorSpec spec = MakeErrorSpec(error_type, rate, SplitSeed(bench.seed, 2));
  std::vector<std::vector<Label>> labels(train_data.utterances.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] =
        CorruptTranscript(train_data.utterances[i].transcript, spec, pool, i)
            .first;
  TrainConfig tcfg = bench.train;
  tcfg.mode = mode;
  tcfg.seed = SplitSeed(bench.seed, 3);
  return Train(train_data, labels, tcfg, vocab).model;
}

int RunTrainToy(TrainToyArgs& args, const CLI::Option* seed_opt) {
  Manifest manifest;
  manifest.subcommand = "train-toy";
  manifest.explicit_path = args.manifest_path;
  args.bench.seed = DefaultSeed(seed_opt, args.bench.seed);
  if (!args.star_mode.empty())
    args.bench.train.star_mode = ParseStarMode(args.star_mode);
  manifest.config = {{"mode", args.mode},
                     {"error-type", args.error_type},
                     {"error-rate", args.error_rate},
                     {"seed", args.bench.seed},
                     {"units", args.bench.units},
                     {"epochs", args.bench.train.epochs},
                     {"lr", args.bench.train.learning_rate},
                     {"batch", args.bench.train.batch_size}};

  LossMode mode = args.mode == "otc" ? LossMode::kOtc : LossMode::kCtc;

  if (!args.sweep.empty()) {
    const std::vector<double> rates = {0.0, 0.1, 0.3, 0.5, 0.7};
    std::string tsv = "error_type\trate\tmode\tter\trealized_rate\n";
    json records = json::array();
    for (LossMode m : {LossMode::kCtc, LossMode::kOtc}) {
      for (double rate : rates) {
        BenchmarkRun run = RunToyBenchmark(args.bench, m, args.error_type, rate);
        tsv += run.error_type + "\t" + FormatSig6(rate) + "\t" + run.mode +
               "\t" + FormatSig6(run.ter) + "\t" +
               FormatSig6(run.realized_rate) + "\n";
        records.push_back(RunToJson(run));
        std::cout << run.mode << " @ " << FormatSig6(rate) << ": ter "
                  << FormatSig6(run.ter) << " (" << FormatSig6(run.train_seconds)
                  << "s)\n";
      }
    }
    WriteFile(args.sweep, tsv);
    manifest.outputs.push_back(args.sweep);
    if (!args.results.empty()) {
      WriteFile(args.results, records.dump(2) + "\n");
      manifest.outputs.push_back(args.results);
    }
    manifest.Write();
    return 0;
  }

  BenchmarkRun run =
      RunToyBenchmark(args.bench, mode, args.error_type, args.error_rate);
  std::cout << "mode " << run.mode << ", error " << run.error_type << " @ "
            << FormatSig6(run.error_rate) << " (realized "
            << FormatSig6(run.realized_rate) << ")\n"
            << "held-out ter " << FormatSig6(run.ter) << "\n"
            << "final loss " << FormatSig6(run.loss_trace.back()) << " after "
            << run.loss_trace.size() << " epochs ("
            << FormatSig6(run.train_seconds) << "s, " << run.skipped
            << " skipped)\n";

  if (!args.results.empty()) {
    WriteFile(args.results, RunToJson(run).dump(2) + "\n");
    manifest.outputs.push_back(args.results);
  }
  if (!args.model_out.empty()) {
    ModelParams model =
        TrainForDump(args.bench, mode, args.error_type, args.error_rate);
    json m;
    m["units"] = args.bench.units;
    m["dim"] = args.bench.data.dim;
    m["star_mode"] = args.bench.train.star_mode == StarMode::kDedicated
                         ? "dedicated"
                         : "average";
    json weight = json::array();
    for (int r = 0; r < model.weight.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < model.weight.cols(); ++c)
        row.push_back(model.weight(r, c));
      weight.push_back(row);
    }
    m["weight"] = weight;
    json bias = json::array();
    for (int r = 0; r < model.bias.size(); ++r) bias.push_back(model.bias(r));
    m["bias"] = bias;
    WriteFile(args.model_out, m.dump() + "\n");
    manifest.outputs.push_back(args.model_out);
  }
  manifest.Write();
  return 0;
}

struct EvalArgs {
  std::string model_path;
  BenchmarkConfig bench;
};

int RunEval(EvalArgs& args, const CLI::Option* seed_opt) {
  args.bench.seed = DefaultSeed(seed_opt, args.bench.seed);
  json m = json::parse(ReadFile(args.model_path));
  ModelParams model;
  int outputs = static_cast<int>(m["weight"].size());
  int dim = m["dim"].get<int>();
  model.weight.resize(outputs, dim);
  for (int r = 0; r < outputs; ++r)
    for (int c = 0; c < dim; ++c)
      model.weight(r, c) = m["weight"][r][c].get<double>();
  model.bias.resize(outputs);
  for (int r = 0; r < outputs; ++r) model.bias(r) = m["bias"][r].get<double>();
  StarMode star_mode = ParseStarMode(m["star_mode"].get<std::string>());

  Vocabulary vocab = MakeToyVocabulary(m["units"].get<int>());
  DatasetParams params = args.bench.data;
  params.num_utts = args.bench.train_utts + args.bench.heldout_utts;
  params.seed = SplitSeed(args.bench.seed, 1);
  ToyDataset all = GenerateDataset(vocab, params);
  ToyDataset heldout;
  heldout.params = params;
  heldout.prototypes = all.prototypes;
  heldout.utterances.assign(all.utterances.begin() + args.bench.train_utts,
                            all.utterances.end());
  std::cout << "ter " << FormatSig6(Evaluate(model, heldout, vocab, star_mode))
            << "\n";
  return 0;
}

void AddBenchmarkOptions(CLI::App* cmd, BenchmarkConfig& bench) {
  cmd->add_option("--units", bench.units, "vocabulary size");
  cmd->add_option("--dim", bench.data.dim, "feature dimension");
  cmd->add_option("--sigma", bench.data.sigma, "feature noise scale");
  cmd->add_option("--train-utts", bench.train_utts, "training utterances");
  cmd->add_option("--heldout-utts", bench.heldout_utts, "held-out utterances");
  cmd->add_option("--min-len", bench.data.min_len, "min transcript length");
  cmd->add_option("--max-len", bench.data.max_len, "max transcript length");
  cmd->add_option("--frames-min", bench.data.frames_min, "min frames per unit");
  cmd->add_option("--frames-max", bench.data.frames_max, "max frames per unit");
  cmd->add_option("--epochs", bench.train.epochs, "training epochs");
  cmd->add_option("--lr", bench.train.learning_rate, "learning rate");
  cmd->add_option("--batch", bench.train.batch_size, "batch size");
  cmd->add_option("--beta1", bench.train.schedule.beta1,
                  "initial self-loop penalty");
  cmd->add_option("--tau1", bench.train.schedule.tau1, "self-loop decay");
  cmd->add_option("--beta2", bench.train.schedule.beta2,
                  "initial bypass penalty");
  cmd->add_option("--tau2", bench.train.schedule.tau2, "bypass decay");
}

// Adopt config-file values for options the user did not pass on the line.
void LoadConfigInto(const std::string& path, BenchmarkConfig& bench,
                    CLI::App* cmd) {
  if (path.empty()) return;
  BenchmarkConfig f = LoadBenchmarkConfig(path);
  auto keep = [&](const char* flag) {
    return cmd->get_option(flag)->count() == 0;
  };
  if (keep("--units")) bench.units = f.units;
  if (keep("--dim")) bench.data.dim = f.data.dim;
  if (keep("--sigma")) bench.data.sigma = f.data.sigma;
  if (keep("--train-utts")) bench.train_utts = f.train_utts;
  if (keep("--heldout-utts")) bench.heldout_utts = f.heldout_utts;
  if (keep("--min-len")) bench.data.min_len = f.data.min_len;
  if (keep("--max-len")) bench.data.max_len = f.data.max_len;
  if (keep("--frames-min")) bench.data.frames_min = f.data.frames_min;
  if (keep("--frames-max")) bench.data.frames_max = f.data.frames_max;
  if (keep("--epochs")) bench.train.epochs = f.train.epochs;
  if (keep("--lr")) bench.train.learning_rate = f.train.learning_rate;
  if (keep("--batch")) bench.train.batch_size = f.train.batch_size;
  if (keep("--beta1")) bench.train.schedule.beta1 = f.train.schedule.beta1;
  if (keep("--tau1")) bench.train.schedule.tau1 = f.train.schedule.tau1;
  if (keep("--beta2")) bench.train.schedule.beta2 = f.train.schedule.beta2;
  if (keep("--tau2")) bench.train.schedule.tau2 = f.train.schedule.tau2;
  if (keep("--seed")) bench.seed = f.seed;
  bench.train.star_mode = f.train.star_mode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WFST toolkit for CTC and OTC training criteria"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  BuildGraphArgs bg;
  auto* bg_cmd = app.add_subcommand(
      "build-graph", "construct T, L, G, G_otc, or E and print it");
  bg_cmd->add_option("--type", bg.type,
                     "ctc-topo | lexicon | linear-g | otc-g | emission")
      ->required();
  bg_cmd->add_option("--vocab", bg.vocab.vocab_path, "unit list file");
  bg_cmd->add_option("--lexicon", bg.vocab.lexicon_path, "lexicon TSV");
  bg_cmd->add_option("--transcript", bg.transcript.inline_text,
                     "space-separated words");
  bg_cmd->add_option("--transcript-file", bg.transcript.file,
                     "file with one utterance per line (first line is used)");
  bg_cmd->add_option("--lambda1", bg.lambda1, "self-loop penalty");
  bg_cmd->add_option("--lambda2", bg.lambda2, "bypass penalty");
  bg_cmd->add_flag("--include-star", bg.include_star,
                   "add the star token to T/L/E");
  bg_cmd->add_option("--emissions", bg.emissions_path, "emission TSV");
  bg_cmd->add_option("--star-mode", bg.star_mode, "average | dedicated");
  bg_cmd->add_option("--format", bg.format, "text | dot");
  bg_cmd->add_option("--output,-o", bg.output, "output path (default stdout)");
  bg_cmd->add_option("--manifest", bg.manifest_path, "manifest path");

  ComposeArgs co;
  auto* co_cmd = app.add_subcommand("compose", "compose two FST text files");
  co_cmd->add_option("a", co.a_path, "left FST")->required();
  co_cmd->add_option("b", co.b_path, "right FST")->required();
  co_cmd->add_flag("--connect", co.connect, "trim the result");
  co_cmd->add_option("--format", co.format, "text | dot");
  co_cmd->add_option("--output,-o", co.output, "output path");
  co_cmd->add_option("--manifest", co.manifest_path, "manifest path");

  std::string tw_path;
  auto* tw_cmd =
      app.add_subcommand("total-weight", "log-sum-exp over all paths");
  tw_cmd->add_option("fst", tw_path, "FST text file")->required();

  LossArgs lo;
  auto* lo_cmd = app.add_subcommand("loss", "CTC/OTC negative log-likelihood");
  lo_cmd->add_option("--emissions", lo.emissions_path, "emission TSV")
      ->required();
  lo_cmd->add_option("--vocab", lo.vocab.vocab_path, "unit list file")
      ->required();
  lo_cmd->add_option("--lexicon", lo.vocab.lexicon_path,
                     "lexicon TSV (identity if omitted)");
  lo_cmd->add_option("--transcript", lo.transcript.inline_text,
                     "space-separated words");
  lo_cmd->add_option("--transcript-file", lo.transcript.file,
                     "transcript file (first line)");
  lo_cmd->add_option("--mode", lo.mode, "ctc | otc");
  lo_cmd->add_option("--star-mode", lo.star_mode, "average | dedicated");
  lo_cmd->add_option("--beta1", lo.schedule.beta1, "initial self-loop penalty");
  lo_cmd->add_option("--tau1", lo.schedule.tau1, "self-loop decay");
  lo_cmd->add_option("--beta2", lo.schedule.beta2, "initial bypass penalty");
  lo_cmd->add_option("--tau2", lo.schedule.tau2, "bypass decay");
  lo_cmd->add_option("--epoch", lo.epoch, "epoch index for the schedule");
  lo_cmd->add_flag("--grad", lo.print_grad, "print the gradient TSV");
  lo_cmd->add_option("--grad-out", lo.grad_out, "gradient TSV path");
  lo_cmd->add_flag("--verify", lo.verify,
                   "cross-check against both brute-force oracles");
  lo_cmd->add_option("--manifest", lo.manifest_path, "manifest path");

  CorruptArgs cr;
  auto* cr_cmd =
      app.add_subcommand("corrupt", "inject synthetic transcript errors");
  cr_cmd->add_option("--input", cr.input, "transcript file, one per line")
      ->required();
  cr_cmd->add_option("--output", cr.output, "corrupted transcript file")
      ->required();
  cr_cmd->add_option("--report", cr.report, "JSON report path");
  cr_cmd->add_option("--p-sub", cr.p_sub, "substitution probability");
  cr_cmd->add_option("--p-ins", cr.p_ins, "insertion probability");
  cr_cmd->add_option("--p-del", cr.p_del, "deletion probability");
  cr_cmd->add_option("--rate", cr.rate,
                     "total rate for --error-type (overrides --p-*)");
  cr_cmd->add_option("--error-type", cr.error_type, "sub | ins | del | mix");
  cr_cmd->add_option("--words", cr.words_path, "replacement word list");
  auto* cr_seed = cr_cmd->add_option("--seed", cr.seed, "corruption seed");
  cr_cmd->add_option("--manifest", cr.manifest_path, "manifest path");

  TrainToyArgs tt;
  auto* tt_cmd = app.add_subcommand(
      "train-toy", "train the synthetic benchmark with CTC or OTC");
  tt_cmd->add_option("--mode", tt.mode, "ctc | otc");
  tt_cmd->add_option("--star-mode", tt.star_mode, "average | dedicated");
  tt_cmd->add_option("--error-type", tt.error_type, "sub | ins | del | mix");
  tt_cmd->add_option("--error-rate", tt.error_rate, "corruption rate");
  tt_cmd->add_option("--results", tt.results, "JSON results path");
  tt_cmd->add_option("--model-out", tt.model_out, "model JSON path");
  tt_cmd->add_option("--sweep", tt.sweep,
                     "TSV path; runs rates {0,.1,.3,.5,.7} x {ctc,otc}");
  tt_cmd->add_option("--manifest", tt.manifest_path, "manifest path");
  std::string tt_config;
  tt_cmd->add_option("--config", tt_config, "key=value config file")
      ->check(CLI::ExistingFile);
  AddBenchmarkOptions(tt_cmd, tt.bench);
  auto* tt_seed = tt_cmd->add_option("--seed", tt.bench.seed, "master seed");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand(
      "eval", "held-out token error rate of a dumped model");
  ev_cmd->add_option("--model", ev.model_path, "model JSON")->required();
  std::string ev_config;
  ev_cmd->add_option("--config", ev_config, "key=value config file")
      ->check(CLI::ExistingFile);
  AddBenchmarkOptions(ev_cmd, ev.bench);
  auto* ev_seed = ev_cmd->add_option("--seed", ev.bench.seed, "master seed");

  ConvertArgs cv;
  auto* cv_cmd = app.add_subcommand("convert", "FST text to text or DOT");
  cv_cmd->add_option("--input", cv.input, "FST text file")->required();
  cv_cmd->add_option("--to", cv.to, "text | dot");
  cv_cmd->add_option("--vocab", cv.vocab.vocab_path,
                     "unit list for DOT symbol names");
  cv_cmd->add_option("--output,-o", cv.output, "output path");
  cv_cmd->add_option("--manifest", cv.manifest_path, "manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bg_cmd->parsed()) return RunBuildGraph(bg);
    if (co_cmd->parsed()) return RunCompose(co);
    if (tw_cmd->parsed()) return RunTotalWeight(tw_path);
    if (lo_cmd->parsed()) return RunLoss(lo);
    if (cr_cmd->parsed()) return RunCorrupt(cr, cr_seed);
    if (tt_cmd->parsed()) {
      LoadConfigInto(tt_config, tt.bench, tt_cmd);
      return RunTrainToy(tt, tt_seed);
    }
    if (ev_cmd->parsed()) {
      LoadConfigInto(ev_config, ev.bench, ev_cmd);
      return RunEval(ev, ev_seed);
    }
    if (cv_cmd->parsed()) return RunConvert(cv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
