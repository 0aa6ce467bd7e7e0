// otcfst/graphs.h

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

#ifndef OTCFST_GRAPHS_H_
#define OTCFST_GRAPHS_H_

#include "otcfst/emission.h"
#include "otcfst/fst.h"
#include "otcfst/vocab.h"

namespace otcfst {

// Self-loop / bypass penalties for the OTC transcript graph.  A penalty
// lambda enters an arc as additive log weight -lambda, so larger penalties
// make the arc less probable; negative penalties act as bonuses.
// +infinity disables the arc entirely.
struct PenaltyPair {
  double lambda1 = 0.0;  // self-loop arcs
  double lambda2 = 0.0;  // bypass arcs
};

// CTC topology T: removes blank and merges repeated units.  Input labels
// are units plus blank (plus star when `include_star`); output labels are
// the deduplicated units.  State 0 is the neutral (post-blank) state and
// every state is final.  Star, when present, behaves exactly like a
// regular unit: a run of star frames emits one star token.
Wfst BuildCtcTopology(const Vocabulary& vocab, bool include_star);

// Lexicon transducer L: a union of word pronunciation paths through a
// single loop state, closed under concatenation.  The first arc of a word
// carries the word as output label, later arcs carry epsilon.  With
// `include_star`, the star unit maps to the star word
// (lex.star_word_id()) as a one-unit word.
Wfst BuildLexiconFst(const Lexicon& lex, const Vocabulary& vocab,
                     bool include_star);

// Linear transcript acceptor G(y): U+1 chain states, arc u -> u+1 labeled
// (y_u : y_u) with weight 0, last state final.
Wfst BuildLinearG(const Transcript& y);

// OTC transcript graph G_otc(y): BuildLinearG plus a star self-loop at
// every state (weight -lambda1) and a star bypass arc parallel to every
// transcript arc (weight -lambda2).  Star arcs carry `star_word` on both
// tapes.  Arcs whose penalty is +infinity are omitted, so with both
// penalties infinite the result equals BuildLinearG(y).
Wfst BuildOtcG(const Transcript& y, const PenaltyPair& p, Label star_word);

// Emission graph E(x): a chain of frames()+1 states with one arc per
// output label between consecutive states, weighted with that frame's log
// probability.  With `include_star`, a star arc is added per frame: in
// average mode its weight is StarLogProb of the row, in dedicated mode the
// star column.  Rows are validated (UnnormalizedRowError).
Wfst BuildEmissionFst(const EmissionMatrix& e, const Vocabulary& vocab,
                      StarMode mode, bool include_star);

}  // namespace otcfst

#endif  // OTCFST_GRAPHS_H_
