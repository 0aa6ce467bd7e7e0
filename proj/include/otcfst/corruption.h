// otcfst/corruption.h

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

#ifndef OTCFST_CORRUPTION_H_
#define OTCFST_CORRUPTION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "otcfst/fst.h"

namespace otcfst {

// Synthetic transcript error rates.  Substitution and deletion are
// mutually exclusive per-token events (p_sub + p_del <= 1); insertion is
// an independent per-gap event, at most one insertion after each token.
struct ErrorSpec {
  double p_sub = 0.0;
  double p_ins = 0.0;
  double p_del = 0.0;
  std::uint64_t seed = 0;
};

// Equal split of a total error rate over the three types.
ErrorSpec MixtureSpec(double total);

struct CorruptionReport {
  int substituted = 0;
  int inserted = 0;
  int deleted = 0;
  int input_tokens = 0;
  int output_tokens = 0;
};

// Corrupts one token sequence.  For each token one event is drawn from
// {substitute, delete, keep}; substitutions are replaced by a uniform draw
// from `pool` minus the original token.  After each original token, an
// insertion from `pool` happens with probability p_ins.  Randomness comes
// from mt19937_64 seeded with SplitSeed(spec.seed, stream_id), so per-
// utterance streams are reproducible independent of processing order.
// Throws EmptyPoolError when a replacement is needed but no candidate
// exists.
std::pair<std::vector<Label>, CorruptionReport> CorruptTranscript(
    std::span<const Label> words, const ErrorSpec& spec,
    std::span<const Label> pool, std::uint64_t stream_id = 0);

struct ErrorRateResult {
  double rate = 0.0;  // (sub + ins + del) / ref length
  int sub = 0;
  int ins = 0;
  int del = 0;
  int ref_len = 0;
  int hyp_len = 0;
  // Set when ref is empty but hyp is not; rate is then defined as the hyp
  // length (pure insertions).
  bool empty_ref = false;
};

// Levenshtein alignment with unit costs; ties prefer substitution over an
// insertion-deletion pair.
ErrorRateResult ErrorRate(std::span<const Label> ref,
                          std::span<const Label> hyp);

}  // namespace otcfst

#endif  // OTCFST_CORRUPTION_H_
