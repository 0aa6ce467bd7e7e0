// src/graphs.cc

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

#include "otcfst/graphs.h"

#include <cmath>
#include <vector>

#include "otcfst/error.h"

namespace otcfst {

Wfst BuildCtcTopology(const Vocabulary& vocab, bool include_star) {
  std::vector<Label> tokens;
  for (int i = 0; i < vocab.num_units(); ++i)
    tokens.push_back(vocab.unit_id(i));
  if (include_star) tokens.push_back(vocab.star_id());

  // State 0 is the neutral state; token k owns state k+1.
  Wfst t(static_cast<StateId>(tokens.size()) + 1);
  t.SetFinal(0);
  t.AddArc(0, 0, vocab.blank_id(), kEpsilon, kLogOne);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    StateId s = static_cast<StateId>(k) + 1;
    t.SetFinal(s);
    t.AddArc(0, s, tokens[k], tokens[k], kLogOne);    // first frame of a run
    t.AddArc(s, s, tokens[k], kEpsilon, kLogOne);     // repeated frames merge
    t.AddArc(s, 0, vocab.blank_id(), kEpsilon, kLogOne);
    for (std::size_t j = 0; j < tokens.size(); ++j)
      if (j != k)  // direct change to a different token, no blank needed
        t.AddArc(s, static_cast<StateId>(j) + 1, tokens[j], tokens[j],
                 kLogOne);
  }
  return t;
}

Wfst BuildLexiconFst(const Lexicon& lex, const Vocabulary& vocab,
                     bool include_star) {
  Wfst l(1);
  l.SetFinal(0);
  auto add_word = [&l](Label word, const std::vector<Label>& units) {
    StateId from = 0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      StateId to = i + 1 == units.size() ? 0 : l.AddState();
      l.AddArc(from, to, units[i], i == 0 ? word : kEpsilon, kLogOne);
      from = to;
    }
  };
  for (Label w = 1; w <= lex.num_words(); ++w)
    add_word(w, lex.Pronunciation(w));
  if (include_star) add_word(lex.star_word_id(), {vocab.star_id()});
  return l;
}

Wfst BuildLinearG(const Transcript& y) {
  const StateId u = static_cast<StateId>(y.size());
  Wfst g(u + 1);
  for (StateId i = 0; i < u; ++i)
    g.AddArc(i, i + 1, y.words[i], y.words[i], kLogOne);
  g.SetFinal(u);
  return g;
}

Wfst BuildOtcG(const Transcript& y, const PenaltyPair& p, Label star_word) {
  if (std::isinf(p.lambda1) && p.lambda1 < 0)
    throw Error("self-loop penalty -inf is not allowed");
  if (std::isinf(p.lambda2) && p.lambda2 < 0)
    throw Error("bypass penalty -inf is not allowed");

  Wfst g = BuildLinearG(y);
  const StateId u = static_cast<StateId>(y.size());
  const bool self_loops = !std::isinf(p.lambda1);
  const bool bypasses = !std::isinf(p.lambda2);
  for (StateId i = 0; i <= u; ++i) {
    if (self_loops) g.AddArc(i, i, star_word, star_word, -p.lambda1);
    if (bypasses && i < u)
      g.AddArc(i, i + 1, star_word, star_word, -p.lambda2);
  }
  return g;
}

Wfst BuildEmissionFst(const EmissionMatrix& e, const Vocabulary& vocab,
                      StarMode mode, bool include_star) {
  if (e.cols() != vocab.NumEmissionCols(mode))
    throw Error("emission matrix has " + std::to_string(e.cols()) +
                " columns, expected " +
                std::to_string(vocab.NumEmissionCols(mode)));
  ValidateNormalized(e);

  Wfst fst(e.frames() + 1);
  fst.SetFinal(e.frames());
  for (int t = 0; t < e.frames(); ++t) {
    fst.AddArc(t, t + 1, vocab.blank_id(), vocab.blank_id(),
               e.log_probs(t, 0));
    for (int i = 0; i < vocab.num_units(); ++i) {
      Label u = vocab.unit_id(i);
      fst.AddArc(t, t + 1, u, u, e.log_probs(t, u));
    }
    if (include_star) {
      double w = mode == StarMode::kAverage
                     ? StarLogProb(e, vocab, t)
                     : e.log_probs(t, vocab.num_units() + 1);
      fst.AddArc(t, t + 1, vocab.star_id(), vocab.star_id(), w);
    }
  }
  return fst;
}

}  // namespace otcfst
