// src/compose.cc

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

#include "otcfst/compose.h"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace otcfst {

namespace {

// Packed (a_state, b_state, filter) key.  State ids in this library are
// int32 and non-negative, so 31 + 31 + 2 bits fit in 64.
struct PairKey {
  std::uint64_t v;
  PairKey(StateId a, StateId b, std::int8_t f)
      : v((static_cast<std::uint64_t>(a) << 33) |
          (static_cast<std::uint64_t>(b) << 2) |
          static_cast<std::uint64_t>(f)) {}
  bool operator==(const PairKey& o) const { return v == o.v; }
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    std::uint64_t x = k.v;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

// b's arcs per state, sorted by input label so matches can be found with a
// range query.
std::vector<std::vector<Arc>> SortArcsByIlabel(const Wfst& b) {
  std::vector<std::vector<Arc>> sorted(b.NumStates());
  for (StateId s = 0; s < b.NumStates(); ++s) {
    auto arcs = b.ArcsFrom(s);
    sorted[s].assign(arcs.begin(), arcs.end());
    std::stable_sort(sorted[s].begin(), sorted[s].end(),
                     [](const Arc& x, const Arc& y) {
                       return x.ilabel < y.ilabel;
                     });
  }
  return sorted;
}

}  // namespace

// The filter canonicalizes each run of single-sided epsilon moves between
// two matches to "all a-side moves first, then all b-side moves":
//   filter 0: match -> 0, a-side eps -> 0, b-side eps -> 1
//   filter 1: match -> 0,                  b-side eps -> 1
// a-side and b-side moves within a run act on independent machines, so the
// canonical order always exists, and only it is generated.
Wfst Compose(const Wfst& a, const Wfst& b,
             std::vector<ComposeStateInfo>* state_info) {
  Wfst out;
  if (state_info) state_info->clear();
  if (a.Empty() || b.Empty()) return out;

  auto b_sorted = SortArcsByIlabel(b);

  std::unordered_map<PairKey, StateId, PairKeyHash> ids;
  std::vector<ComposeStateInfo> info;
  std::queue<StateId> todo;

  auto intern = [&](StateId sa, StateId sb, std::int8_t f) {
    PairKey key(sa, sb, f);
    auto [it, inserted] = ids.emplace(key, out.NumStates());
    if (inserted) {
      out.AddState();
      info.push_back(ComposeStateInfo{sa, sb, f});
      todo.push(it->second);
    }
    return it->second;
  };

  intern(a.Start(), b.Start(), 0);
  while (!todo.empty()) {
    StateId s = todo.front();
    todo.pop();
    const auto [sa, sb, f] = info[s];

    if (a.IsFinal(sa) && b.IsFinal(sb))
      out.SetFinal(s, a.FinalWeight(sa) + b.FinalWeight(sb));

    for (const Arc& ea : a.ArcsFrom(sa)) {
      if (ea.olabel == kEpsilon) {
        if (f == 0)
          out.AddArc(s, intern(ea.dst, sb, 0), ea.ilabel, kEpsilon, ea.weight);
        continue;
      }
      const auto& barcs = b_sorted[sb];
      auto lo = std::lower_bound(barcs.begin(), barcs.end(), ea.olabel,
                                 [](const Arc& x, Label l) {
                                   return x.ilabel < l;
                                 });
      for (auto it = lo; it != barcs.end() && it->ilabel == ea.olabel; ++it)
        out.AddArc(s, intern(ea.dst, it->dst, 0), ea.ilabel, it->olabel,
                   ea.weight + it->weight);
    }
    for (const Arc& eb : b.ArcsFrom(sb)) {
      if (eb.ilabel != kEpsilon) continue;
      out.AddArc(s, intern(sa, eb.dst, 1), kEpsilon, eb.olabel, eb.weight);
    }
  }

  if (state_info) *state_info = std::move(info);
  return out;
}

}  // namespace otcfst
