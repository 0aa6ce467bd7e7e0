// otcfst/oracle.h

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

#ifndef OTCFST_ORACLE_H_
#define OTCFST_ORACLE_H_

#include <span>
#include <vector>

#include "otcfst/loss.h"

namespace otcfst {

// The collapse function B: merges adjacent equal labels, then deletes the
// blank.  Star survives as an ordinary token.
std::vector<Label> Collapse(std::span<const Label> pi, Label blank);

// Brute-force log P(y | x) by direct enumeration of every frame-level
// alignment string.  Each alignment over units + blank (+ star in OTC
// mode) is scored as the sum of its per-frame log probabilities, collapsed
// with B, segmented into words through the lexicon, and matched against
// the transcript (for OTC: against the star-pattern language with the
// penalties of PenaltyAt(cfg.schedule, epoch)).  Sums over all accepted
// (alignment, parse) pairs; returns kLogZero when none exist.
//
// This is a verification reference: it shares no code with the WFST
// machinery and is exponential in the number of frames.  Throws
// PathExplosionError when the alignment count exceeds `max_alignments`.
double BrutePosterior(const EmissionMatrix& emissions, const Transcript& y,
                      const LossConfig& cfg, int epoch = 0,
                      std::int64_t max_alignments = 10000000);

}  // namespace otcfst

#endif  // OTCFST_ORACLE_H_
