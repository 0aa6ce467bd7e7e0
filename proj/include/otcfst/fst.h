// otcfst/fst.h

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

#ifndef OTCFST_FST_H_
#define OTCFST_FST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "otcfst/semiring.h"

namespace otcfst {

// Arc labels are small non-negative integers; 0 is reserved for epsilon
// (no symbol).  What a label means (unit, word, ...) is a property of the
// graph it appears in, not of the type.
using Label = std::int32_t;
inline constexpr Label kEpsilon = 0;

using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

struct Arc {
  StateId src = kNoState;
  StateId dst = kNoState;
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  LogWeight weight = kLogOne;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// A weighted finite-state transducer on the log semiring.  States have
// contiguous ids 0..NumStates()-1 and state 0 is the start state.  A graph
// with no states is the empty transducer (it accepts nothing).
//
// Instances are mutated only while being built; every algorithm in this
// library takes its inputs by const reference and returns a new graph, so
// constructed values can be shared freely across threads.
class Wfst {
 public:
  Wfst() = default;
  explicit Wfst(StateId num_states) { AddStates(num_states); }

  StateId AddState() {
    arcs_.emplace_back();
    final_.push_back(kLogZero);
    return static_cast<StateId>(arcs_.size()) - 1;
  }
  void AddStates(StateId n) {
    for (StateId i = 0; i < n; ++i) AddState();
  }

  void AddArc(StateId src, StateId dst, Label ilabel, Label olabel,
              LogWeight weight);
  void SetFinal(StateId s, LogWeight weight = kLogOne);

  StateId NumStates() const { return static_cast<StateId>(arcs_.size()); }
  std::int64_t NumArcs() const;
  bool Empty() const { return arcs_.empty(); }
  StateId Start() const { return Empty() ? kNoState : 0; }

  std::span<const Arc> ArcsFrom(StateId s) const { return arcs_[s]; }
  LogWeight FinalWeight(StateId s) const { return final_[s]; }
  bool IsFinal(StateId s) const { return final_[s] != kLogZero; }
  std::vector<StateId> FinalStates() const;

 private:
  std::vector<std::vector<Arc>> arcs_;  // grouped by source state
  std::vector<LogWeight> final_;        // kLogZero = not final
};

// States in topological order.  Throws CyclicGraphError if the graph has a
// cycle (self-loops count).
std::vector<StateId> TopologicalOrder(const Wfst& w);

// Sum (log-sum-exp) over all start-to-final paths of path weight times
// final weight, computed by a forward pass over a topological order.
// Returns kLogZero when no final state is reachable.  Requires an acyclic
// graph; the builders in this library guarantee that every graph composed
// with a frame-indexed emission graph is acyclic.
LogWeight TotalWeight(const Wfst& w);

// Per-state forward weights alpha[s] = sum over start->s paths; kLogZero
// for unreachable states.  Requires acyclic input; `order` must be a
// topological order of w.
std::vector<LogWeight> ForwardWeights(const Wfst& w,
                                      std::span<const StateId> order);
// Per-state backward weights beta[s] = sum over s->final paths including
// final weights.
std::vector<LogWeight> BackwardWeights(const Wfst& w,
                                       std::span<const StateId> order);

// Removes states that are not reachable from the start or cannot reach a
// final state, renumbering the survivors densely in BFS order from the
// start.  The total weight is unchanged.  May return an empty graph.
Wfst Connect(const Wfst& w);

struct FstPath {
  std::vector<Label> ilabels;  // epsilons omitted
  std::vector<Label> olabels;  // epsilons omitted
  LogWeight weight = kLogOne;  // arc weights plus final weight
};

// Every start-to-final path, each listed exactly once.  Throws
// PathExplosionError once more than `max_paths` paths have been produced
// and CyclicGraphError on cyclic input.
std::vector<FstPath> EnumeratePaths(const Wfst& w,
                                    std::int64_t max_paths = 1000000);

}  // namespace otcfst

#endif  // OTCFST_FST_H_
