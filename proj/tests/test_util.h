// tests/test_util.h

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

#ifndef OTCFST_TESTS_TEST_UTIL_H_
#define OTCFST_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <map>
#include <vector>

#include "otcfst/emission.h"
#include "otcfst/fst.h"
#include "otcfst/rng.h"
#include "otcfst/semiring.h"
#include "otcfst/vocab.h"

namespace otcfst::test {

// Random acyclic transducer: arcs only go from lower to higher state ids,
// labels drawn from [0, max_label] (0 = epsilon), weights in [-2, 0].
inline Wfst RandomAcyclicFst(Rng& rng, int max_states, int max_label,
                             double arc_density = 0.5) {
  int n = static_cast<int>(rng.UniformRange(1, max_states));
  Wfst w(n);
  for (StateId s = 0; s < n; ++s)
    for (StateId d = s + 1; d < n; ++d) {
      int arcs = rng.Uniform01() < arc_density ? 1 : 0;
      if (rng.Uniform01() < 0.15) ++arcs;  // occasional parallel arc
      for (int k = 0; k < arcs; ++k)
        w.AddArc(s, d,
                 static_cast<Label>(rng.UniformInt(max_label + 1)),
                 static_cast<Label>(rng.UniformInt(max_label + 1)),
                 -2.0 * rng.Uniform01());
    }
  w.SetFinal(n - 1, -rng.Uniform01());
  if (n > 2 && rng.Uniform01() < 0.5) w.SetFinal(n / 2, -rng.Uniform01());
  return w;
}

// Emission matrix with log-softmax of N(0, scale^2) logits per row.
inline EmissionMatrix RandomEmissions(Rng& rng, int frames, int cols,
                                      double scale = 1.0) {
  EmissionMatrix e;
  e.log_probs.resize(frames, cols);
  for (int t = 0; t < frames; ++t) {
    for (int c = 0; c < cols; ++c) e.log_probs(t, c) = scale * rng.Gaussian();
    double hi = e.log_probs.row(t).maxCoeff();
    double lse = hi + std::log((e.log_probs.row(t).array() - hi).exp().sum());
    e.log_probs.row(t).array() -= lse;
  }
  return e;
}

// Canonical renumbering by BFS from the start with arcs ordered by
// (ilabel, olabel, weight, ...); two graphs are isomorphic iff their
// canonical serializations match.  Assumes arcs out of one state are
// pairwise distinguishable, which holds for every builder output.
inline std::string CanonicalString(const Wfst& w) {
  if (w.Empty()) return "";
  std::vector<StateId> new_id(w.NumStates(), kNoState);
  std::vector<StateId> bfs{w.Start()};
  new_id[w.Start()] = 0;
  for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
    auto arcs_span = w.ArcsFrom(bfs[qi]);
    std::vector<Arc> arcs(arcs_span.begin(), arcs_span.end());
    std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
      return std::tuple(a.ilabel, a.olabel, a.weight, new_id[a.dst]) <
             std::tuple(b.ilabel, b.olabel, b.weight, new_id[b.dst]);
    });
    for (const Arc& a : arcs)
      if (new_id[a.dst] == kNoState) {
        new_id[a.dst] = static_cast<StateId>(bfs.size());
        bfs.push_back(a.dst);
      }
  }
  std::string out;
  for (StateId s : bfs) {
    auto arcs_span = w.ArcsFrom(s);
    std::vector<Arc> arcs(arcs_span.begin(), arcs_span.end());
    std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
      return std::tuple(a.ilabel, a.olabel, a.weight, new_id[a.dst]) <
             std::tuple(b.ilabel, b.olabel, b.weight, new_id[b.dst]);
    });
    for (const Arc& a : arcs)
      out += std::to_string(new_id[a.src]) + " " + std::to_string(new_id[a.dst]) +
             " " + std::to_string(a.ilabel) + " " + std::to_string(a.olabel) +
             " " + std::to_string(a.weight) + "\n";
    if (w.IsFinal(s))
      out += std::to_string(new_id[s]) + " " +
             std::to_string(w.FinalWeight(s)) + "\n";
  }
  return out;
}

inline bool IsIsomorphic(const Wfst& a, const Wfst& b) {
  return CanonicalString(a) == CanonicalString(b);
}

// log-sum-exp over all enumerated path weights; the second oracle for
// lattice totals.
inline LogWeight PathSum(const std::vector<FstPath>& paths) {
  LogWeight total = kLogZero;
  for (const auto& p : paths) total = LogAdd(total, p.weight);
  return total;
}

// Max-weight (Viterbi) path over an acyclic graph; returns the olabel
// sequence with epsilons removed, or nullopt if no path exists.
inline std::optional<std::vector<Label>> BestPathOlabels(const Wfst& w) {
  if (w.Empty()) return std::nullopt;
  auto order = TopologicalOrder(w);
  std::vector<double> best(w.NumStates(), kLogZero);
  std::vector<const Arc*> back(w.NumStates(), nullptr);
  best[w.Start()] = 0.0;
  for (StateId s : order) {
    if (best[s] == kLogZero) continue;
    for (const Arc& a : w.ArcsFrom(s))
      if (best[s] + a.weight > best[a.dst]) {
        best[a.dst] = best[s] + a.weight;
        back[a.dst] = &a;
      }
  }
  StateId best_final = kNoState;
  double best_total = kLogZero;
  for (StateId s = 0; s < w.NumStates(); ++s)
    if (w.IsFinal(s) && best[s] != kLogZero &&
        best[s] + w.FinalWeight(s) > best_total) {
      best_total = best[s] + w.FinalWeight(s);
      best_final = s;
    }
  if (best_final == kNoState) return std::nullopt;
  std::vector<Label> olabels;
  for (StateId s = best_final; back[s] != nullptr; s = back[s]->src)
    if (back[s]->olabel != kEpsilon) olabels.push_back(back[s]->olabel);
  std::reverse(olabels.begin(), olabels.end());
  return olabels;
}

}  // namespace otcfst::test

#endif  // OTCFST_TESTS_TEST_UTIL_H_
