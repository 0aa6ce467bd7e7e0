// otcfst/compose.h

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

#ifndef OTCFST_COMPOSE_H_
#define OTCFST_COMPOSE_H_

#include <cstdint>
#include <vector>

#include "otcfst/fst.h"

namespace otcfst {

// Which pair of source states a composed state stands for.  `filter` is the
// epsilon-sequencing filter state: 0 = any move allowed next, 1 = only
// b-side epsilon moves or matches allowed next.
struct ComposeStateInfo {
  StateId a_state = kNoState;
  StateId b_state = kNoState;
  std::int8_t filter = 0;
};

// Composition a o b: matches a's output labels against b's input labels.
// The weight of a composed arc is the sum of the matched arcs' weights;
// epsilon labels are handled with an epsilon-sequencing filter so every
// matching pair of paths appears exactly once in the result.  An empty
// intersection yields a graph with no final-reachable states (possibly with
// no states at all).
//
// If `state_info` is non-null it receives, per composed state id, the pair
// of source states it corresponds to.
Wfst Compose(const Wfst& a, const Wfst& b,
             std::vector<ComposeStateInfo>* state_info = nullptr);

}  // namespace otcfst

#endif  // OTCFST_COMPOSE_H_
