// tests/test_oracle.cc

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
#include "otcfst/compose.h"
#include "otcfst/error.h"
#include "otcfst/oracle.h"
#include "test_util.h"

using namespace otcfst;
using namespace otcfst::test;

namespace {

// Random small loss instance over an identity lexicon.
struct Instance {
  LossConfig cfg;
  Transcript y;
  EmissionMatrix emissions;
  int epoch = 0;
};

Instance RandomInstance(Rng& rng, LossMode mode, StarMode star_mode) {
  Instance inst;
  int units = static_cast<int>(rng.UniformRange(1, 3));
  std::vector<std::string> names;
  for (int i = 0; i < units; ++i)
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  inst.cfg.vocab = Vocabulary(names);
  inst.cfg.lexicon = Lexicon::Identity(inst.cfg.vocab);
  inst.cfg.mode = mode;
  inst.cfg.star_mode = star_mode;
  // free-signed penalties, including small bonuses
  inst.cfg.schedule.beta1 = -1.0 + 3.0 * rng.Uniform01();
  inst.cfg.schedule.beta2 = -1.0 + 3.0 * rng.Uniform01();
  inst.epoch = static_cast<int>(rng.UniformRange(0, 3));
  int u = static_cast<int>(rng.UniformRange(0, 3));
  for (int i = 0; i < u; ++i)
    inst.y.words.push_back(static_cast<Label>(rng.UniformRange(1, units)));
  int frames = static_cast<int>(rng.UniformRange(1, 6));
  inst.emissions =
      RandomEmissions(rng, frames, inst.cfg.vocab.NumEmissionCols(star_mode));
  return inst;
}

// The second oracle: log-sum-exp over explicitly enumerated lattice paths.
double LatticePathOracle(const Instance& inst) {
  PenaltyPair p;
  if (inst.cfg.mode == LossMode::kOtc)
    p = PenaltyAt(inst.cfg.schedule, inst.epoch);
  Wfst s = BuildTrainingGraph(inst.cfg, inst.y, p);
  Wfst e = BuildEmissionFst(inst.emissions, inst.cfg.vocab,
                            inst.cfg.star_mode,
                            inst.cfg.mode == LossMode::kOtc);
  return PathSum(EnumeratePaths(Compose(e, s), 5000000));
}

}  // namespace

TEST_CASE("collapse merges repeats then deletes blank") {
  const Label a = 1, b = 2, blk = 9;
  CHECK(Collapse(std::vector<Label>{a, a, blk, b}, blk) ==
        std::vector<Label>{a, b});
  CHECK(Collapse(std::vector<Label>{blk, blk, blk}, blk) ==
        std::vector<Label>{});
  CHECK(Collapse(std::vector<Label>{a, blk, a}, blk) ==
        std::vector<Label>{a, a});
  CHECK(Collapse(std::vector<Label>{}, blk) == std::vector<Label>{});
  // star (any non-blank label) survives
  const Label star = 4;
  CHECK(Collapse(std::vector<Label>{star, star, a}, blk) ==
        std::vector<Label>{star, a});
}

TEST_CASE("brute posterior on hand-checked cases") {
  Vocabulary vocab({"a", "b"});
  LossConfig cfg;
  cfg.vocab = vocab;
  cfg.lexicon = Lexicon::Identity(vocab);

  SUBCASE("uniform thirds over two frames, target 'a'") {
    EmissionMatrix e;
    e.log_probs = Eigen::MatrixXd::Constant(2, 3, std::log(1.0 / 3.0));
    // 9 alignments, 3 of which collapse to "a"
    CHECK(BrutePosterior(e, Transcript{{1}}, cfg) ==
          doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("empty target sums the all-blank alignment") {
    EmissionMatrix e;
    e.log_probs.resize(2, 3);
    e.log_probs << std::log(0.8), std::log(0.1), std::log(0.1),
        std::log(0.6), std::log(0.2), std::log(0.2);
    CHECK(BrutePosterior(e, Transcript{}, cfg) ==
          doctest::Approx(std::log(0.8) + std::log(0.6)).epsilon(1e-12));
  }
  SUBCASE("infeasible target gives log zero") {
    EmissionMatrix e;
    e.log_probs = Eigen::MatrixXd::Constant(1, 3, std::log(1.0 / 3.0));
    CHECK(BrutePosterior(e, Transcript{{1, 2, 1}}, cfg) == kLogZero);
  }
  SUBCASE("alignment bound throws") {
    EmissionMatrix e;
    e.log_probs = Eigen::MatrixXd::Constant(6, 3, std::log(1.0 / 3.0));
    CHECK_THROWS_AS(BrutePosterior(e, Transcript{{1}}, cfg, 0, 100),
                    PathExplosionError);
  }
}

TEST_CASE("the two oracles agree on random ctc instances") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = RandomInstance(rng, LossMode::kCtc, StarMode::kAverage);
    double brute = BrutePosterior(inst.emissions, inst.y, inst.cfg);
    double paths = LatticePathOracle(inst);
    if (brute == kLogZero) {
      CHECK(paths == kLogZero);
    } else {
      CHECK(std::abs(brute - paths) <=
            1e-10 * std::max(1.0, std::abs(brute)));
    }
  }
}

TEST_CASE("the two oracles agree on random otc instances") {
  Rng rng(103);
  for (int trial = 0; trial < 120; ++trial) {
    StarMode sm = trial % 2 ? StarMode::kDedicated : StarMode::kAverage;
    Instance inst = RandomInstance(rng, LossMode::kOtc, sm);
    double brute =
        BrutePosterior(inst.emissions, inst.y, inst.cfg, inst.epoch);
    double paths = LatticePathOracle(inst);
    if (brute == kLogZero) {
      // feasible only when the transcript needs more frames than exist
      CHECK(inst.y.size() > static_cast<std::size_t>(inst.emissions.frames()));
      CHECK(paths == kLogZero);
    } else {
      CHECK(std::abs(brute - paths) <=
            1e-10 * std::max(1.0, std::abs(brute)));
    }
  }
}

TEST_CASE("oracles handle multi-unit and homophone lexicons") {
  Vocabulary vocab({"a", "b"});
  Lexicon lex;
  lex.AddWord("ab", {1, 2});
  lex.AddWord("a", {1});
  lex.AddWord("alt", {1});  // homophone of "a"
  LossConfig base;
  base.vocab = vocab;
  base.lexicon = lex;
  base.schedule.beta1 = 0.5;
  base.schedule.beta2 = 0.25;

  Rng rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst;
    inst.cfg = base;
    inst.cfg.mode = trial % 2 ? LossMode::kOtc : LossMode::kCtc;
    int u = static_cast<int>(rng.UniformRange(0, 2));
    for (int i = 0; i < u; ++i)
      inst.y.words.push_back(static_cast<Label>(rng.UniformRange(1, 3)));
    inst.emissions =
        RandomEmissions(rng, static_cast<int>(rng.UniformRange(1, 5)), 3);
    double brute =
        BrutePosterior(inst.emissions, inst.y, inst.cfg, inst.epoch);
    double paths = LatticePathOracle(inst);
    if (brute == kLogZero)
      CHECK(paths == kLogZero);
    else
      CHECK(std::abs(brute - paths) <=
            1e-10 * std::max(1.0, std::abs(brute)));
  }
}
