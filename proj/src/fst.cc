// src/fst.cc

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

#include "otcfst/fst.h"

#include <cassert>
#include <deque>
#include <queue>

#include "otcfst/error.h"

namespace otcfst {

void Wfst::AddArc(StateId src, StateId dst, Label ilabel, Label olabel,
                  LogWeight weight) {
  assert(src >= 0 && src < NumStates());
  assert(dst >= 0 && dst < NumStates());
  assert(ilabel >= 0 && olabel >= 0);
  arcs_[src].push_back(Arc{src, dst, ilabel, olabel, weight});
}

void Wfst::SetFinal(StateId s, LogWeight weight) {
  assert(s >= 0 && s < NumStates());
  final_[s] = weight;
}

std::int64_t Wfst::NumArcs() const {
  std::int64_t n = 0;
  for (const auto& a : arcs_) n += static_cast<std::int64_t>(a.size());
  return n;
}

std::vector<StateId> Wfst::FinalStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < NumStates(); ++s)
    if (IsFinal(s)) out.push_back(s);
  return out;
}

std::vector<StateId> TopologicalOrder(const Wfst& w) {
  const StateId n = w.NumStates();
  std::vector<std::int32_t> in_degree(n, 0);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : w.ArcsFrom(s)) ++in_degree[a.dst];

  std::vector<StateId> order;
  order.reserve(n);
  std::deque<StateId> ready;
  for (StateId s = 0; s < n; ++s)
    if (in_degree[s] == 0) ready.push_back(s);
  while (!ready.empty()) {
    StateId s = ready.front();
    ready.pop_front();
    order.push_back(s);
    for (const Arc& a : w.ArcsFrom(s))
      if (--in_degree[a.dst] == 0) ready.push_back(a.dst);
  }
  if (static_cast<StateId>(order.size()) != n)
    throw CyclicGraphError("graph contains a cycle");
  return order;
}

std::vector<LogWeight> ForwardWeights(const Wfst& w,
                                      std::span<const StateId> order) {
  std::vector<LogWeight> alpha(w.NumStates(), kLogZero);
  if (w.Empty()) return alpha;
  alpha[w.Start()] = kLogOne;
  for (StateId s : order) {
    if (alpha[s] == kLogZero) continue;
    for (const Arc& a : w.ArcsFrom(s))
      alpha[a.dst] = LogAdd(alpha[a.dst], alpha[s] + a.weight);
  }
  return alpha;
}

std::vector<LogWeight> BackwardWeights(const Wfst& w,
                                       std::span<const StateId> order) {
  std::vector<LogWeight> beta(w.NumStates(), kLogZero);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    StateId s = *it;
    LogWeight b = w.FinalWeight(s);
    for (const Arc& a : w.ArcsFrom(s))
      b = LogAdd(b, a.weight + beta[a.dst]);
    beta[s] = b;
  }
  return beta;
}

LogWeight TotalWeight(const Wfst& w) {
  if (w.Empty()) return kLogZero;
  auto order = TopologicalOrder(w);
  auto alpha = ForwardWeights(w, order);
  LogWeight total = kLogZero;
  for (StateId s = 0; s < w.NumStates(); ++s)
    if (w.IsFinal(s) && alpha[s] != kLogZero)
      total = LogAdd(total, alpha[s] + w.FinalWeight(s));
  return total;
}

Wfst Connect(const Wfst& w) {
  if (w.Empty()) return Wfst();
  const StateId n = w.NumStates();

  std::vector<bool> reachable(n, false);
  std::queue<StateId> bfs;
  reachable[w.Start()] = true;
  bfs.push(w.Start());
  while (!bfs.empty()) {
    StateId s = bfs.front();
    bfs.pop();
    for (const Arc& a : w.ArcsFrom(s))
      if (!reachable[a.dst]) {
        reachable[a.dst] = true;
        bfs.push(a.dst);
      }
  }

  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : w.ArcsFrom(s)) preds[a.dst].push_back(s);
  std::vector<bool> coreachable(n, false);
  for (StateId s = 0; s < n; ++s)
    if (w.IsFinal(s)) {
      coreachable[s] = true;
      bfs.push(s);
    }
  while (!bfs.empty()) {
    StateId s = bfs.front();
    bfs.pop();
    for (StateId p : preds[s])
      if (!coreachable[p]) {
        coreachable[p] = true;
        bfs.push(p);
      }
  }

  if (!coreachable[w.Start()]) return Wfst();

  // Renumber kept states in BFS order from the start so the result has a
  // canonical dense numbering with the start at 0.
  std::vector<StateId> new_id(n, kNoState);
  std::vector<StateId> kept;
  new_id[w.Start()] = 0;
  kept.push_back(w.Start());
  bfs.push(w.Start());
  while (!bfs.empty()) {
    StateId s = bfs.front();
    bfs.pop();
    for (const Arc& a : w.ArcsFrom(s)) {
      if (!reachable[a.dst] || !coreachable[a.dst]) continue;
      if (new_id[a.dst] == kNoState) {
        new_id[a.dst] = static_cast<StateId>(kept.size());
        kept.push_back(a.dst);
        bfs.push(a.dst);
      }
    }
  }

  Wfst out(static_cast<StateId>(kept.size()));
  for (StateId s : kept) {
    for (const Arc& a : w.ArcsFrom(s)) {
      if (new_id[a.dst] == kNoState) continue;
      out.AddArc(new_id[s], new_id[a.dst], a.ilabel, a.olabel, a.weight);
    }
    if (w.IsFinal(s)) out.SetFinal(new_id[s], w.FinalWeight(s));
  }
  return out;
}

namespace {

struct PathEnumerator {
  const Wfst& w;
  std::int64_t max_paths;
  std::vector<FstPath> paths;
  std::vector<Label> ilabels, olabels;

  void Visit(StateId s, LogWeight weight) {
    if (w.IsFinal(s)) {
      if (static_cast<std::int64_t>(paths.size()) >= max_paths)
        throw PathExplosionError("more than " + std::to_string(max_paths) +
                                 " paths");
      paths.push_back(FstPath{ilabels, olabels, weight + w.FinalWeight(s)});
    }
    for (const Arc& a : w.ArcsFrom(s)) {
      if (a.ilabel != kEpsilon) ilabels.push_back(a.ilabel);
      if (a.olabel != kEpsilon) olabels.push_back(a.olabel);
      Visit(a.dst, weight + a.weight);
      if (a.ilabel != kEpsilon) ilabels.pop_back();
      if (a.olabel != kEpsilon) olabels.pop_back();
    }
  }
};

}  // namespace

std::vector<FstPath> EnumeratePaths(const Wfst& w, std::int64_t max_paths) {
  if (w.Empty()) return {};
  TopologicalOrder(w);  // cycle check; DFS below would not terminate
  PathEnumerator e{w, max_paths, {}, {}, {}};
  e.Visit(w.Start(), kLogOne);
  return std::move(e.paths);
}

}  // namespace otcfst
