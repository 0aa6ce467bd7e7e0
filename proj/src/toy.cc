// src/toy.cc

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

#include "otcfst/toy.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "otcfst/error.h"
#include "otcfst/oracle.h"
#include "otcfst/rng.h"

namespace otcfst {

Vocabulary MakeToyVocabulary(int num_units) {
  std::vector<std::string> units;
  for (int i = 0; i < num_units; ++i) {
    if (i < 26)
      units.push_back(std::string(1, static_cast<char>('a' + i)));
    else
      units.push_back("u" + std::to_string(i + 1));
  }
  return Vocabulary(std::move(units));
}

ToyDataset GenerateDataset(const Vocabulary& vocab,
                           const DatasetParams& params) {
  if (params.sigma < 0 || params.min_len < 1 ||
      params.max_len < params.min_len || params.frames_min < 1 ||
      params.frames_max < params.frames_min)
    throw Error("invalid dataset parameters");
  const int n = vocab.num_units();

  ToyDataset data;
  data.params = params;
  Rng proto_rng(SplitSeed(params.seed, 0));
  data.prototypes.resize(n, params.dim);
  for (int u = 0; u < n; ++u)
    for (int k = 0; k < params.dim; ++k)
      data.prototypes(u, k) = proto_rng.Gaussian();

  data.utterances.reserve(params.num_utts);
  for (int i = 0; i < params.num_utts; ++i) {
    Rng rng(SplitSeed(params.seed, 1000 + static_cast<std::uint64_t>(i)));
    Utterance utt;
    int len = static_cast<int>(
        rng.UniformRange(params.min_len, params.max_len));
    Label prev = kEpsilon;
    for (int u = 0; u < len; ++u) {
      Label unit;
      if (n == 1) {
        unit = 1;
      } else {
        // uniform over units != prev
        auto k = rng.UniformInt(static_cast<std::uint64_t>(
            prev == kEpsilon ? n : n - 1));
        unit = static_cast<Label>(k) + 1;
        if (prev != kEpsilon && unit >= prev) ++unit;
      }
      utt.transcript.push_back(unit);
      prev = unit;
    }
    std::vector<int> frames(len);
    int total = 0;
    for (int u = 0; u < len; ++u) {
      frames[u] = static_cast<int>(
          rng.UniformRange(params.frames_min, params.frames_max));
      total += frames[u];
    }
    utt.features.resize(total, params.dim);
    int t = 0;
    for (int u = 0; u < len; ++u)
      for (int f = 0; f < frames[u]; ++f, ++t)
        for (int k = 0; k < params.dim; ++k)
          utt.features(t, k) = data.prototypes(utt.transcript[u] - 1, k) +
                               params.sigma * rng.Gaussian();
    data.utterances.push_back(std::move(utt));
  }
  return data;
}

ModelParams ModelParams::Zero(int outputs, int dim) {
  ModelParams m;
  m.weight = Eigen::MatrixXd::Zero(outputs, dim);
  m.bias = Eigen::VectorXd::Zero(outputs);
  return m;
}

EmissionMatrix Forward(const ModelParams& model,
                       const Eigen::MatrixXd& features) {
  EmissionMatrix e;
  e.log_probs = features * model.weight.transpose();
  e.log_probs.rowwise() += model.bias.transpose();
  for (int t = 0; t < e.frames(); ++t) {
    double hi = e.log_probs.row(t).maxCoeff();
    double lse = hi + std::log((e.log_probs.row(t).array() - hi).exp().sum());
    e.log_probs.row(t).array() -= lse;
  }
  return e;
}

TrainResult Train(const ToyDataset& data,
                  const std::vector<std::vector<Label>>& transcripts,
                  const TrainConfig& cfg, const Vocabulary& vocab) {
  if (transcripts.size() != data.utterances.size())
    throw Error("transcript count does not match utterance count");
  if (cfg.epochs < 1 || cfg.learning_rate <= 0 || cfg.batch_size < 1)
    throw Error("invalid training configuration");

  LossConfig lcfg;
  lcfg.mode = cfg.mode;
  lcfg.star_mode = cfg.star_mode;
  lcfg.schedule = cfg.schedule;
  lcfg.vocab = vocab;
  lcfg.lexicon = Lexicon::Identity(vocab);

  const int num_utts = static_cast<int>(data.utterances.size());
  const int outputs = vocab.NumEmissionCols(cfg.star_mode);
  const int dim = static_cast<int>(data.params.dim);

  TrainResult result;
  result.model = ModelParams::Zero(outputs, dim);

  // CTC training graphs do not depend on the epoch; build them once.
  std::vector<Wfst> graphs(num_utts);
  auto build_graph = [&](int i, const PenaltyPair& p) {
    return BuildTrainingGraph(lcfg, Transcript{transcripts[i]}, p);
  };
  if (cfg.mode == LossMode::kCtc)
    for (int i = 0; i < num_utts; ++i) graphs[i] = build_graph(i, {});

  Rng shuffle_rng(SplitSeed(cfg.seed, 7));
  std::vector<int> order(num_utts);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.mode == LossMode::kOtc) {
      PenaltyPair p = PenaltyAt(cfg.schedule, epoch);
      for (int i = 0; i < num_utts; ++i) graphs[i] = build_graph(i, p);
    }
    shuffle_rng.Shuffle(order);

    double epoch_nll = 0.0;
    int epoch_valid = 0;
    for (int begin = 0; begin < num_utts; begin += cfg.batch_size) {
      int end = std::min(begin + cfg.batch_size, num_utts);
      Eigen::MatrixXd wgrad = Eigen::MatrixXd::Zero(outputs, dim);
      Eigen::VectorXd bgrad = Eigen::VectorXd::Zero(outputs);
      int valid = 0;
      for (int k = begin; k < end; ++k) {
        const Utterance& utt = data.utterances[order[k]];
        EmissionMatrix e = Forward(result.model, utt.features);
        LossResult loss = LatticeLoss(e, graphs[order[k]], lcfg);
        if (loss.no_path) {
          ++result.skipped;
          continue;
        }
        // d nll / d logits = grad - softmax * (row sum of grad)
        Eigen::MatrixXd probs = e.log_probs.array().exp();
        Eigen::VectorXd row_sums = loss.grad.rowwise().sum();
        Eigen::MatrixXd dlogits =
            loss.grad - (probs.array().colwise() * row_sums.array()).matrix();
        wgrad += dlogits.transpose() * utt.features;
        bgrad += dlogits.colwise().sum().transpose();
        epoch_nll += loss.nll;
        ++valid;
      }
      if (valid > 0) {
        result.model.weight -= (cfg.learning_rate / valid) * wgrad;
        result.model.bias -= (cfg.learning_rate / valid) * bgrad;
      }
      epoch_valid += valid;
    }
    double mean = epoch_valid > 0
                      ? epoch_nll / epoch_valid
                      : std::numeric_limits<double>::infinity();
    result.loss_trace.push_back(mean);
    if (!std::isfinite(mean)) {
      result.diverged = true;
      break;
    }
  }
  return result;
}

std::vector<Label> GreedyDecode(const EmissionMatrix& emissions,
                                const Vocabulary& vocab, StarMode mode) {
  std::vector<Label> pi(emissions.frames());
  for (int t = 0; t < emissions.frames(); ++t) {
    int best = 0;
    emissions.log_probs.row(t).maxCoeff(&best);
    pi[t] = vocab.LabelOfCol(best, mode);
  }
  std::vector<Label> out = Collapse(pi, vocab.blank_id());
  if (mode == StarMode::kDedicated) std::erase(out, vocab.star_id());
  return out;
}

double Evaluate(const ModelParams& model, const ToyDataset& data,
                const Vocabulary& vocab, StarMode mode) {
  if (data.utterances.empty()) return 0.0;
  double sum = 0.0;
  for (const Utterance& utt : data.utterances) {
    auto hyp = GreedyDecode(Forward(model, utt.features), vocab, mode);
    sum += ErrorRate(utt.transcript, hyp).rate;
  }
  return sum / static_cast<double>(data.utterances.size());
}

ErrorSpec MakeErrorSpec(const std::string& error_type, double rate,
                        std::uint64_t seed) {
  ErrorSpec spec;
  if (error_type == "mix") {
    spec = MixtureSpec(rate);
  } else if (error_type == "sub") {
    spec.p_sub = rate;
  } else if (error_type == "ins") {
    spec.p_ins = rate;
  } else if (error_type == "del") {
    spec.p_del = rate;
  } else if (error_type != "none") {
    throw Error("unknown error type '" + error_type + "'");
  }
  spec.seed = seed;
  return spec;
}

BenchmarkConfig LoadBenchmarkConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  BenchmarkConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ParseError("expected key=value", line_no);
      continue;
    }
    auto strip = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      std::size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("expected key=value", line_no);

    if (key == "units") cfg.units = std::stoi(value);
    else if (key == "dim") cfg.data.dim = std::stoi(value);
    else if (key == "sigma") cfg.data.sigma = std::stod(value);
    else if (key == "train-utts") cfg.train_utts = std::stoi(value);
    else if (key == "heldout-utts") cfg.heldout_utts = std::stoi(value);
    else if (key == "min-len") cfg.data.min_len = std::stoi(value);
    else if (key == "max-len") cfg.data.max_len = std::stoi(value);
    else if (key == "frames-min") cfg.data.frames_min = std::stoi(value);
    else if (key == "frames-max") cfg.data.frames_max = std::stoi(value);
    else if (key == "epochs") cfg.train.epochs = std::stoi(value);
    else if (key == "lr") cfg.train.learning_rate = std::stod(value);
    else if (key == "batch") cfg.train.batch_size = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "beta1") cfg.train.schedule.beta1 = std::stod(value);
    else if (key == "tau1") cfg.train.schedule.tau1 = std::stod(value);
    else if (key == "beta2") cfg.train.schedule.beta2 = std::stod(value);
    else if (key == "tau2") cfg.train.schedule.tau2 = std::stod(value);
    else if (key == "star-mode")
      cfg.train.star_mode = value == "dedicated" ? StarMode::kDedicated
                                                 : StarMode::kAverage;
    else throw ParseError("unknown key '" + key + "'", line_no);
  }
  return cfg;
}

BenchmarkRun RunToyBenchmark(const BenchmarkConfig& cfg, LossMode mode,
                             const std::string& error_type, double rate) {
  Vocabulary vocab = MakeToyVocabulary(cfg.units);

  DatasetParams params = cfg.data;
  params.num_utts = cfg.train_utts + cfg.heldout_utts;
  params.seed = SplitSeed(cfg.seed, 1);
  ToyDataset all = GenerateDataset(vocab, params);

  ToyDataset train_data, heldout;
  train_data.params = heldout.params = params;
  train_data.prototypes = heldout.prototypes = all.prototypes;
  train_data.utterances.assign(all.utterances.begin(),
                               all.utterances.begin() + cfg.train_utts);
  heldout.utterances.assign(all.utterances.begin() + cfg.train_utts,
                            all.utterances.end());

  std::vector<Label> pool;
  for (int i = 0; i < vocab.num_units(); ++i) pool.push_back(vocab.unit_id(i));
  ErrorSpec spec = MakeErrorSpec(error_type, rate, SplitSeed(cfg.seed, 2));

  BenchmarkRun run;
  run.mode = mode == LossMode::kOtc ? "otc" : "ctc";
  run.error_type = rate == 0.0 ? "none" : error_type;
  run.error_rate = rate;

  std::vector<std::vector<Label>> labels(train_data.utterances.size());
  double realized = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [corrupted, report] =
        CorruptTranscript(train_data.utterances[i].transcript, spec, pool, i);
    labels[i] = std::move(corrupted);
    realized += ErrorRate(train_data.utterances[i].transcript, labels[i]).rate;
  }
  run.realized_rate = realized / static_cast<double>(labels.size());

  TrainConfig tcfg = cfg.train;
  tcfg.mode = mode;
  tcfg.seed = SplitSeed(cfg.seed, 3);

  auto start = std::chrono::steady_clock::now();
  TrainResult trained = Train(train_data, labels, tcfg, vocab);
  run.train_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  run.loss_trace = std::move(trained.loss_trace);
  run.skipped = trained.skipped;
  run.ter = Evaluate(trained.model, heldout, vocab, tcfg.star_mode);
  return run;
}

}  // namespace otcfst
