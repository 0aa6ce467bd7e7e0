// otcfst/toy.h

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

#ifndef OTCFST_TOY_H_
#define OTCFST_TOY_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "otcfst/corruption.h"
#include "otcfst/loss.h"

namespace otcfst {

// Synthetic "acoustic" data: each unit owns a Gaussian prototype vector and
// an utterance emits a few noisy copies of each transcript unit's
// prototype.  A linear-softmax classifier over these features stands in
// for the acoustic model, which keeps the focus on the loss surface.

struct DatasetParams {
  int num_utts = 500;
  int min_len = 5;   // transcript length range, in units
  int max_len = 12;
  int frames_min = 2;  // frames drawn per unit
  int frames_max = 4;
  int dim = 16;        // feature dimension
  double sigma = 0.3;  // noise scale around the prototype
  std::uint64_t seed = 0;
};

struct Utterance {
  Eigen::MatrixXd features;      // frames x dim
  std::vector<Label> transcript; // true unit sequence
};

struct ToyDataset {
  DatasetParams params;
  Eigen::MatrixXd prototypes;  // num_units x dim
  std::vector<Utterance> utterances;
};

// Units "a", "b", ... (then "u27", "u28", ... past the alphabet).
Vocabulary MakeToyVocabulary(int num_units);

// Deterministic in params.seed; one RNG stream per utterance.  Transcripts
// avoid immediate unit repeats so that nearest-prototype decoding recovers
// them exactly at sigma = 0.
ToyDataset GenerateDataset(const Vocabulary& vocab, const DatasetParams& params);

// Affine map dim -> output units followed by log-softmax.  The output
// layout matches EmissionMatrix columns for the configured star mode.
struct ModelParams {
  Eigen::MatrixXd weight;  // outputs x dim
  Eigen::VectorXd bias;    // outputs

  static ModelParams Zero(int outputs, int dim);
};

EmissionMatrix Forward(const ModelParams& model,
                       const Eigen::MatrixXd& features);

struct TrainConfig {
  LossMode mode = LossMode::kCtc;
  StarMode star_mode = StarMode::kAverage;
  PenaltySchedule schedule;
  int epochs = 30;
  double learning_rate = 0.2;
  int batch_size = 20;
  std::uint64_t seed = 0;
};

struct TrainResult {
  ModelParams model;
  std::vector<double> loss_trace;  // mean per-utterance nll per epoch
  int skipped = 0;                 // utterance evaluations with no path
  bool diverged = false;
};

// Mini-batch gradient descent on the mean per-utterance nll, chaining the
// exact lattice gradients through the log-softmax.  `transcripts` are the
// (possibly corrupted) training labels, one per utterance.  OTC penalties
// follow PenaltyAt(cfg.schedule, epoch) each epoch.
TrainResult Train(const ToyDataset& data,
                  const std::vector<std::vector<Label>>& transcripts,
                  const TrainConfig& cfg, const Vocabulary& vocab);

// Per-frame argmax (ties to the first output column, i.e. blank) followed
// by collapse.  In dedicated mode star wins are emitted, then deleted from
// the collapsed sequence.
std::vector<Label> GreedyDecode(const EmissionMatrix& emissions,
                                const Vocabulary& vocab, StarMode mode);

// Mean per-utterance error rate of greedy decoding against the true
// transcripts.
double Evaluate(const ModelParams& model, const ToyDataset& data,
                const Vocabulary& vocab, StarMode mode);

// ---- Committed benchmark -------------------------------------------------

struct BenchmarkConfig {
  int units = 8;
  int train_utts = 400;
  int heldout_utts = 100;
  DatasetParams data;     // num_utts/seed filled in when running
  TrainConfig train;
  std::uint64_t seed = 1; // master seed; data/corruption/training streams
                          // are derived from it
};

// key=value text, same keys as the train-toy command line flags.
BenchmarkConfig LoadBenchmarkConfig(const std::string& path);

// "sub", "ins", "del", or "mix" (equal three-way split).
ErrorSpec MakeErrorSpec(const std::string& error_type, double rate,
                        std::uint64_t seed);

struct BenchmarkRun {
  std::string mode;        // "ctc" or "otc"
  std::string error_type;  // "sub", "ins", "del", "mix", "none"
  double error_rate = 0.0;
  double realized_rate = 0.0;  // measured corruption of the training labels
  double ter = 0.0;            // held-out token error rate
  std::vector<double> loss_trace;
  int skipped = 0;
  double train_seconds = 0.0;
};

// Generates the dataset, corrupts the training transcripts, trains with
// the requested criterion, and evaluates on the held-out split.
BenchmarkRun RunToyBenchmark(const BenchmarkConfig& cfg, LossMode mode,
                             const std::string& error_type, double rate);

}  // namespace otcfst

#endif  // OTCFST_TOY_H_
