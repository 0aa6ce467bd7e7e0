// tests/test_toy.cc

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

#include <cmath>

#include "doctest.h"
#include "otcfst/error.h"
#include "otcfst/oracle.h"
#include "otcfst/toy.h"
#include "test_util.h"

using namespace otcfst;
using namespace otcfst::test;

namespace {

DatasetParams SmallParams(std::uint64_t seed) {
  DatasetParams p;
  p.num_utts = 40;
  p.min_len = 3;
  p.max_len = 6;
  p.dim = 8;
  p.sigma = 0.2;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("dataset generation") {
  Vocabulary vocab = MakeToyVocabulary(4);
  SUBCASE("fixed seed gives bit-identical datasets") {
    ToyDataset a = GenerateDataset(vocab, SmallParams(42));
    ToyDataset b = GenerateDataset(vocab, SmallParams(42));
    REQUIRE(a.utterances.size() == b.utterances.size());
    CHECK(a.prototypes == b.prototypes);
    for (std::size_t i = 0; i < a.utterances.size(); ++i) {
      CHECK(a.utterances[i].transcript == b.utterances[i].transcript);
      CHECK(a.utterances[i].features == b.utterances[i].features);
    }
    ToyDataset c = GenerateDataset(vocab, SmallParams(43));
    CHECK(a.utterances[0].features != c.utterances[0].features);
  }
  SUBCASE("zero utterances") {
    DatasetParams p = SmallParams(1);
    p.num_utts = 0;
    CHECK(GenerateDataset(vocab, p).utterances.empty());
  }
  SUBCASE("noiseless features classify to the transcript") {
    DatasetParams p = SmallParams(7);
    p.sigma = 0.0;
    ToyDataset data = GenerateDataset(vocab, p);
    for (const Utterance& utt : data.utterances) {
      // nearest prototype per frame, then merge runs
      std::vector<Label> frame_units;
      for (int t = 0; t < utt.features.rows(); ++t) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int u = 0; u < vocab.num_units(); ++u) {
          double d =
              (utt.features.row(t) - data.prototypes.row(u)).squaredNorm();
          if (d < best_d) {
            best_d = d;
            best = u;
          }
        }
        frame_units.push_back(vocab.unit_id(best));
      }
      CHECK(Collapse(frame_units, vocab.blank_id()) == utt.transcript);
    }
  }
  SUBCASE("frame counts stay within the per-unit range") {
    ToyDataset data = GenerateDataset(vocab, SmallParams(9));
    for (const Utterance& utt : data.utterances) {
      int len = static_cast<int>(utt.transcript.size());
      CHECK(utt.features.rows() >= 2 * len);
      CHECK(utt.features.rows() <= 4 * len);
    }
  }
}

TEST_CASE("greedy decoding") {
  Vocabulary vocab = MakeToyVocabulary(2);
  auto one_hot = [&](const std::vector<Label>& labels) {
    EmissionMatrix e;
    e.log_probs.resize(static_cast<int>(labels.size()), 3);
    for (std::size_t t = 0; t < labels.size(); ++t)
      for (int c = 0; c < 3; ++c) {
        Label l = vocab.LabelOfCol(c, StarMode::kAverage);
        e.log_probs(t, c) = std::log(l == labels[t] ? 0.98 : 0.01);
      }
    return e;
  };
  const Label a = 1, b = 2, blk = vocab.blank_id();

  SUBCASE("collapses blanks and repeats") {
    auto decoded =
        GreedyDecode(one_hot({blk, a, a, blk, b}), vocab, StarMode::kAverage);
    CHECK(decoded == std::vector<Label>{a, b});
  }
  SUBCASE("all blank decodes to the empty sequence") {
    auto decoded =
        GreedyDecode(one_hot({blk, blk, blk}), vocab, StarMode::kAverage);
    CHECK(decoded.empty());
  }
  SUBCASE("exact ties go to the first column, which is blank") {
    EmissionMatrix e;
    e.log_probs = Eigen::MatrixXd::Constant(4, 3, std::log(1.0 / 3.0));
    CHECK(GreedyDecode(e, vocab, StarMode::kAverage).empty());
  }
  SUBCASE("dedicated star wins are emitted then deleted") {
    EmissionMatrix e;
    e.log_probs.resize(3, 4);
    // frames: a, star, a -> collapsed "a star a" -> "a a"
    e.log_probs << std::log(0.01), std::log(0.97), std::log(0.01),
        std::log(0.01), std::log(0.01), std::log(0.01), std::log(0.01),
        std::log(0.97), std::log(0.01), std::log(0.97), std::log(0.01),
        std::log(0.01);
    auto decoded = GreedyDecode(e, vocab, StarMode::kDedicated);
    CHECK(decoded == std::vector<Label>{a, a});
  }
  SUBCASE("matches argmax plus collapse on random peaked emissions") {
    Rng rng(301);
    for (int trial = 0; trial < 50; ++trial) {
      EmissionMatrix e = RandomEmissions(rng, 6, 3, 3.0);
      auto decoded = GreedyDecode(e, vocab, StarMode::kAverage);
      std::vector<Label> pi;
      for (int t = 0; t < 6; ++t) {
        int best = 0;
        e.log_probs.row(t).maxCoeff(&best);
        pi.push_back(vocab.LabelOfCol(best, StarMode::kAverage));
      }
      CHECK(decoded == Collapse(pi, vocab.blank_id()));
    }
  }
}

TEST_CASE("zero model decodes to empty strings and maximal error") {
  Vocabulary vocab = MakeToyVocabulary(4);
  ToyDataset data = GenerateDataset(vocab, SmallParams(11));
  ModelParams zero = ModelParams::Zero(
      vocab.NumEmissionCols(StarMode::kAverage), data.params.dim);
  double ter = Evaluate(zero, data, vocab, StarMode::kAverage);
  CHECK(ter > 0.9);
  CHECK(ter == Evaluate(zero, data, vocab, StarMode::kAverage));
}

TEST_CASE("training on verbatim labels reduces loss and error") {
  Vocabulary vocab = MakeToyVocabulary(4);
  ToyDataset data = GenerateDataset(vocab, SmallParams(13));
  std::vector<std::vector<Label>> labels;
  for (const auto& utt : data.utterances) labels.push_back(utt.transcript);

  TrainConfig cfg;
  cfg.mode = LossMode::kCtc;
  cfg.epochs = 12;
  cfg.learning_rate = 0.15;
  cfg.batch_size = 10;
  cfg.seed = 5;
  TrainResult r = Train(data, labels, cfg, vocab);
  CHECK(!r.diverged);
  CHECK(r.skipped == 0);
  REQUIRE(r.loss_trace.size() == 12);
  CHECK(r.loss_trace.back() < 0.5 * r.loss_trace.front());
  // mostly monotone decrease with a small learning rate
  int upticks = 0;
  for (std::size_t i = 1; i < r.loss_trace.size(); ++i)
    if (r.loss_trace[i] > r.loss_trace[i - 1]) ++upticks;
  CHECK(upticks <= 1);

  double ter = Evaluate(r.model, data, vocab, cfg.star_mode);
  ModelParams zero = ModelParams::Zero(
      vocab.NumEmissionCols(cfg.star_mode), data.params.dim);
  CHECK(ter < 0.5 * Evaluate(zero, data, vocab, cfg.star_mode));

  // determinism of the whole pipeline
  TrainResult again = Train(data, labels, cfg, vocab);
  CHECK(again.model.weight == r.model.weight);
  CHECK(Evaluate(again.model, data, vocab, cfg.star_mode) == ter);
}

TEST_CASE("otc training with corrupted labels stays on its feet") {
  Vocabulary vocab = MakeToyVocabulary(4);
  DatasetParams p = SmallParams(17);
  p.num_utts = 60;
  ToyDataset data = GenerateDataset(vocab, p);
  std::vector<Label> pool;
  for (int i = 0; i < vocab.num_units(); ++i) pool.push_back(vocab.unit_id(i));

  ErrorSpec spec = MakeErrorSpec("mix", 0.5, 23);
  std::vector<std::vector<Label>> labels(data.utterances.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] =
        CorruptTranscript(data.utterances[i].transcript, spec, pool, i).first;

  TrainConfig cfg;
  cfg.mode = LossMode::kOtc;
  cfg.schedule.beta1 = 0.7;
  cfg.schedule.beta2 = 0.7;
  cfg.epochs = 15;
  cfg.learning_rate = 0.15;
  cfg.batch_size = 10;
  cfg.seed = 3;
  TrainResult r = Train(data, labels, cfg, vocab);
  CHECK(!r.diverged);
  double ter = Evaluate(r.model, data, vocab, cfg.star_mode);
  ModelParams zero = ModelParams::Zero(
      vocab.NumEmissionCols(cfg.star_mode), data.params.dim);
  CHECK(ter < Evaluate(zero, data, vocab, cfg.star_mode));
}

TEST_CASE("benchmark config loads key=value text") {
  std::string path = std::string(OTCFST_SOURCE_DIR) +
                     "/configs/toy-benchmark.cfg";
  BenchmarkConfig cfg = LoadBenchmarkConfig(path);
  CHECK(cfg.units == 8);
  CHECK(cfg.data.dim == 16);
  CHECK(cfg.data.sigma == 0.3);
  CHECK(cfg.train_utts == 400);
  CHECK(cfg.heldout_utts == 100);
  CHECK(cfg.data.min_len == 5);
  CHECK(cfg.data.max_len == 12);
  CHECK(cfg.train.epochs >= 1);
  CHECK(cfg.train.learning_rate > 0);
}

TEST_CASE("error spec construction by type") {
  CHECK(MakeErrorSpec("sub", 0.4, 1).p_sub == 0.4);
  CHECK(MakeErrorSpec("sub", 0.4, 1).p_del == 0.0);
  CHECK(MakeErrorSpec("ins", 0.4, 1).p_ins == 0.4);
  CHECK(MakeErrorSpec("del", 0.4, 1).p_del == 0.4);
  CHECK(MakeErrorSpec("mix", 0.3, 1).p_sub == doctest::Approx(0.1));
  CHECK(MakeErrorSpec("none", 0.0, 1).p_sub == 0.0);
  CHECK_THROWS_AS(MakeErrorSpec("typo", 0.1, 1), Error);
}
